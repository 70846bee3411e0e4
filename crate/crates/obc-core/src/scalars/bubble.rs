use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{GRat, MPoly, Mono, ScalarError};

/// Polynomial in the odd bubbles `D1, D3, D5, ...`; variable `k` stands for `D(2k+1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct BubblePoly(MPoly);

fn weight(k: usize) -> u32 {
    2 * k as u32 + 1
}

impl BubblePoly {
    pub fn zero() -> Self {
        BubblePoly(MPoly::zero())
    }

    pub fn one() -> Self {
        BubblePoly(MPoly::one())
    }

    pub fn constant(c: GRat) -> Self {
        BubblePoly(MPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        BubblePoly::constant(GRat::from_int(n))
    }

    /// The counterclockwise bubble with `k` dots. Zero for even `k`.
    pub fn delta(k: u32) -> Self {
        if k.is_multiple_of(2) {
            return BubblePoly::zero();
        }
        BubblePoly(MPoly::var(((k - 1) / 2) as usize))
    }

    pub fn from_mpoly(p: MPoly) -> Self {
        BubblePoly(p)
    }

    pub fn as_mpoly(&self) -> &MPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_constant(&self) -> Option<GRat> {
        self.0.as_constant()
    }

    pub fn scale(&self, c: &GRat) -> Self {
        BubblePoly(self.0.scale(c))
    }

    /// Total number of black dots over all bubbles, maximised over terms.
    pub fn black_degree(&self) -> Option<u32> {
        self.0.weighted_degree(weight)
    }

    /// Iterates `(multiset of bubble indices ascending, coefficient)`.
    pub fn monomials(&self) -> impl Iterator<Item = (Vec<u32>, &GRat)> {
        self.0.terms().iter().map(|(m, c)| (indices(m), c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GRat)> {
        self.0.terms().iter()
    }

    pub fn all_integral(&self) -> bool {
        self.0.all_integral()
    }

    /// Every bubble monomial of total black degree at most `k`, as exponent vectors.
    pub fn monomials_up_to(k: u32) -> Vec<Mono> {
        fn rec(idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            let w = weight(idx);
            if w > left {
                let mut m = cur.clone();
                while m.last() == Some(&0) {
                    m.pop();
                }
                out.push(m);
                return;
            }
            let mut e = 0;
            while e * w <= left {
                cur.push(e);
                rec(idx + 1, left - e * w, cur, out);
                cur.pop();
                e += 1;
            }
        }
        let mut out = Vec::new();
        rec(0, k, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// Expands an exponent vector into the ascending list of odd bubble indices.
pub fn indices(m: &[u32]) -> Vec<u32> {
    let mut v = Vec::new();
    for (k, e) in m.iter().enumerate() {
        for _ in 0..*e {
            v.push(weight(k));
        }
    }
    v
}

/// The clockwise bubble with `k` dots written in counterclockwise bubbles.
///
/// Uses `sum_{0<=i<=(k+1)/2} D(2i-1) D'(k-2i) = 0` with `D(-1) = 1`, `D'(-1) = -1`.
pub fn delta_prime(k: u32) -> BubblePoly {
    if k.is_multiple_of(2) {
        return BubblePoly::zero();
    }
    // prime[j] holds D'(2j-1) for j >= 1; index 0 is D'(-1).
    let top = (k as usize).div_ceil(2);
    let mut prime: Vec<BubblePoly> = vec![BubblePoly::from_int(-1)];
    for j in 1..=top {
        // D'(2j-1) = -sum_{i>=1} D(2i-1) D'(2j-1-2i)
        let mut acc = BubblePoly::zero();
        for i in 1..=j {
            let d = BubblePoly::delta(2 * i as u32 - 1);
            acc = &acc + &(&d * &prime[j - i]);
        }
        prime.push(-&acc);
    }
    prime[top].clone()
}

impl fmt::Display for BubblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.0.render(|k| format!("D{}", weight(k)), weight)
        )
    }
}

impl FromStr for BubblePoly {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let var = |name: &str| -> Option<usize> {
            let k: u32 = name.strip_prefix('D')?.parse().ok()?;
            if k % 2 == 1 {
                Some(((k - 1) / 2) as usize)
            } else {
                None
            }
        };
        Ok(BubblePoly(MPoly::parse_with(s, var)?))
    }
}

impl<'a> Add<&'a BubblePoly> for &'a BubblePoly {
    type Output = BubblePoly;
    fn add(self, o: &BubblePoly) -> BubblePoly {
        BubblePoly(&self.0 + &o.0)
    }
}

impl<'a> Sub<&'a BubblePoly> for &'a BubblePoly {
    type Output = BubblePoly;
    fn sub(self, o: &BubblePoly) -> BubblePoly {
        BubblePoly(&self.0 - &o.0)
    }
}

impl<'a> Mul<&'a BubblePoly> for &'a BubblePoly {
    type Output = BubblePoly;
    fn mul(self, o: &BubblePoly) -> BubblePoly {
        BubblePoly(&self.0 * &o.0)
    }
}

impl Neg for &BubblePoly {
    type Output = BubblePoly;
    fn neg(self) -> BubblePoly {
        BubblePoly(-&self.0)
    }
}

/// Bubble polynomial multiplication, the product in the endomorphisms of the unit object.
pub fn bubble_mul(p: &BubblePoly, q: &BubblePoly) -> BubblePoly {
    p * q
}
