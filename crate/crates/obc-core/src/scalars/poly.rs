use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::GRat;

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal.
pub type Mono = Vec<u32>;

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
        .collect();
    trim(out)
}

/// Commutative polynomial over `GRat` in variables indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct MPoly {
    terms: BTreeMap<Mono, GRat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: GRat) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        MPoly::constant(GRat::one())
    }

    pub fn var(k: usize) -> Self {
        let mut m = vec![0; k + 1];
        m[k] = 1;
        MPoly::monomial(m, GRat::one())
    }

    pub fn monomial(m: Mono, c: GRat) -> Self {
        let mut p = MPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Mono, GRat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, GRat> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<GRat> {
        match self.terms.len() {
            0 => Some(GRat::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &[u32]) -> GRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: GRat) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &MPoly, s: &GRat) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &GRat) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Degree with variable `k` weighted by `weight(k)`.
    pub fn weighted_degree(&self, weight: impl Fn(usize) -> u32) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().enumerate().map(|(k, e)| e * weight(k)).sum())
            .max()
    }

    pub fn degree(&self) -> Option<u32> {
        self.weighted_degree(|_| 1)
    }

    /// The homogeneous component of the given weighted degree.
    pub fn component(&self, deg: u32, weight: impl Fn(usize) -> u32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let d: u32 = m.iter().enumerate().map(|(k, e)| e * weight(k)).sum();
            if d == deg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[k]` for variable `k`.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (k, e) in m.iter().enumerate() {
                if *e > 0 {
                    t = &t * &images[k].pow(*e);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn all_integral(&self) -> bool {
        self.terms.values().all(GRat::is_integral)
    }

    /// Renders with a caller-supplied variable namer, highest weighted degree first.
    pub fn render(&self, name: impl Fn(usize) -> String, weight: impl Fn(usize) -> u32) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(&Mono, &GRat)> = self.terms.iter().collect();
        let deg = |m: &Mono| -> u32 { m.iter().enumerate().map(|(k, e)| e * weight(k)).sum() };
        items.sort_by(|a, b| deg(b.0).cmp(&deg(a.0)).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (idx, (m, c)) in items.into_iter().enumerate() {
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(k, e)| {
                    if *e == 1 {
                        name(k)
                    } else {
                        format!("{}^{}", name(k), e)
                    }
                })
                .collect();
            let (neg, mag) = split_sign(c);
            let mag_str = mag.to_string();
            let complex = !mag.im().is_zero() && !mag.re().is_zero();
            let coef = if complex {
                format!("({})", mag_str)
            } else {
                mag_str
            };
            let body = if factors.is_empty() {
                coef
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", coef, factors.join("*"))
            };
            if idx == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Inverse of `render`: parses sums of `coef*name^e*...` terms.
    pub fn parse_with(
        s: &str,
        var: impl Fn(&str) -> Option<usize>,
    ) -> Result<MPoly, super::ScalarError> {
        let bad = || super::ScalarError::Parse(s.to_string());
        let mut out = MPoly::zero();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad());
        }
        let mut pos = 0;
        while pos < chars.len() {
            let mut sign = GRat::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let mut coef = sign;
            let mut mono: Mono = Vec::new();
            loop {
                if pos >= chars.len() {
                    return Err(bad());
                }
                if chars[pos] == '(' {
                    let end = chars[pos..]
                        .iter()
                        .position(|&c| c == ')')
                        .ok_or_else(bad)?
                        + pos;
                    let lit: String = chars[pos + 1..end].iter().collect();
                    coef = &coef * &lit.parse::<GRat>()?;
                    pos = end + 1;
                } else if chars[pos].is_ascii_digit() {
                    let start = pos;
                    while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                        pos += 1;
                    }
                    let lit: String = chars[start..pos].iter().collect();
                    let mut val: GRat = lit.parse()?;
                    if pos < chars.len()
                        && chars[pos] == 'i'
                        && (pos + 1 == chars.len() || !chars[pos + 1].is_ascii_alphanumeric())
                    {
                        val = &val * &GRat::i();
                        pos += 1;
                    }
                    coef = &coef * &val;
                } else if chars[pos].is_ascii_alphabetic() {
                    let start = pos;
                    pos += 1;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let name: String = chars[start..pos].iter().collect();
                    let mut e = 1u32;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        let es = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let lit: String = chars[es..pos].iter().collect();
                        e = lit.parse().map_err(|_| bad())?;
                    }
                    if name == "i" {
                        coef = &coef * &GRat::i().pow(e);
                    } else {
                        let k = var(&name).ok_or_else(bad)?;
                        if mono.len() <= k {
                            mono.resize(k + 1, 0);
                        }
                        mono[k] += e;
                    }
                } else {
                    return Err(bad());
                }
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                    continue;
                }
                break;
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }
}

fn split_sign(c: &GRat) -> (bool, GRat) {
    use num_traits::Signed;
    let neg = if c.re().is_zero() {
        c.im().is_negative()
    } else {
        c.re().is_negative()
    };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&GRat::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_trim() {
        let x = MPoly::var(0);
        let y = MPoly::var(2);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.coeff(&[2]), GRat::one());
        assert_eq!(p.coeff(&[0, 0, 2]), GRat::from_int(-1));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn render_parse_roundtrip() {
        let name = |k: usize| format!("v{}", k + 1);
        let var = |s: &str| {
            s.strip_prefix('v')
                .and_then(|d| d.parse::<usize>().ok())
                .map(|d| d - 1)
        };
        let p = MPoly::parse_with("3*v1^2*v3 - 1 + (1/2+1*i)*v2", var).unwrap();
        let text = p.render(name, |_| 1);
        assert_eq!(MPoly::parse_with(&text, var).unwrap(), p);
    }
}
