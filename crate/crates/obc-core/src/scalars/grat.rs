use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// An element `re + im*i` of the Gaussian rationals, `i = sqrt(-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GRat {
    re: BigRational,
    im: BigRational,
}

impl GRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GRat { re, im }
    }

    pub fn zero() -> Self {
        GRat::default()
    }

    pub fn one() -> Self {
        GRat::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(GRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        })
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when both parts are integers (a Gaussian integer).
    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn conj(&self) -> Self {
        GRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(GRat {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    pub fn div(&self, other: &GRat) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        GRat {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}*i",
                    fmt_rat(&self.re),
                    sign,
                    fmt_rat(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rat(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Parses one signed summand, either real (`3/2`) or imaginary (`3/2*i`, `3/2i`, `i`).
fn parse_summand(s: &str) -> Result<GRat, ScalarError> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim()),
    };
    if body.is_empty() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    let val = if let Some(coef) = body.strip_suffix('i') {
        let coef = coef.trim().trim_end_matches('*').trim();
        let im = if coef.is_empty() {
            BigRational::one()
        } else {
            parse_rat(coef)?
        };
        GRat {
            re: BigRational::zero(),
            im,
        }
    } else {
        GRat {
            re: parse_rat(body)?,
            im: BigRational::zero(),
        }
    };
    Ok(if neg { -val } else { val })
}

impl FromStr for GRat {
    type Err = ScalarError;

    /// Accepts `a/b`, `a/b+c/d*i`, `c/d*i`, `1i`, `-i` and similar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ScalarError::Parse(s));
        }
        let mut acc = GRat::zero();
        let mut start = 0;
        let bytes = s.as_bytes();
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                acc += parse_summand(&s[start..k])?;
                start = k;
            }
        }
        acc += parse_summand(&s[start..])?;
        Ok(acc)
    }
}

impl From<i64> for GRat {
    fn from(n: i64) -> Self {
        GRat::from_int(n)
    }
}

impl<'a> Add<&'a GRat> for &'a GRat {
    type Output = GRat;
    fn add(self, o: &GRat) -> GRat {
        GRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a GRat> for &'a GRat {
    type Output = GRat;
    fn sub(self, o: &GRat) -> GRat {
        GRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a GRat> for &'a GRat {
    type Output = GRat;
    fn mul(self, o: &GRat) -> GRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GRat {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            };
        }
        GRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for GRat {
    type Output = GRat;
    fn add(self, o: GRat) -> GRat {
        &self + &o
    }
}

impl Sub for GRat {
    type Output = GRat;
    fn sub(self, o: GRat) -> GRat {
        &self - &o
    }
}

impl Mul for GRat {
    type Output = GRat;
    fn mul(self, o: GRat) -> GRat {
        &self * &o
    }
}

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&GRat> for GRat {
    fn add_assign(&mut self, o: &GRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for GRat {
    fn add_assign(&mut self, o: GRat) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&GRat> for GRat {
    fn sub_assign(&mut self, o: &GRat) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GRat> for GRat {
    fn mul_assign(&mut self, o: &GRat) {
        *self = &*self * o;
    }
}

impl serde::Serialize for GRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GRat {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_norm() {
        assert_eq!(&g("1+1i") * &g("1-1i"), GRat::from_int(2));
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(GRat::i().inv().unwrap(), g("-i"));
        assert!(GRat::zero().inv().is_err());
    }

    #[test]
    fn fraction_sum() {
        assert_eq!(&g("1/3") + &g("1/6"), g("1/2"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(g("3/2+1i").to_string(), "3/2+1*i");
        assert_eq!(g("-2/4").to_string(), "-1/2");
        assert_eq!(g("-i").to_string(), "-1*i");
        assert_eq!(g("0").to_string(), "0");
        assert_eq!(g("1/2-3/4*i").to_string(), "1/2-3/4*i");
    }

    #[test]
    fn parse_rejects_junk() {
        assert!("".parse::<GRat>().is_err());
        assert!("1/0".parse::<GRat>().is_err());
        assert!("abc".parse::<GRat>().is_err());
    }
}
