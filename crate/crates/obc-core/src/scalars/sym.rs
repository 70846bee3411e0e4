use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use super::{GRat, MPoly, ScalarError};

/// Symmetric function written in the complete homogeneous basis; variable `k` is `h(k+1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SymPoly(MPoly);

fn weight(k: usize) -> u32 {
    k as u32 + 1
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly(MPoly::zero())
    }

    pub fn one() -> Self {
        SymPoly(MPoly::one())
    }

    /// `h_r`, with `h_0 = 1`.
    pub fn h(r: u32) -> Self {
        if r == 0 {
            SymPoly::one()
        } else {
            SymPoly(MPoly::var(r as usize - 1))
        }
    }

    pub fn as_mpoly(&self) -> &MPoly {
        &self.0
    }

    pub fn scale(&self, c: &GRat) -> Self {
        SymPoly(self.0.scale(c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.weighted_degree(weight)
    }

    /// `e_r` from `sum_s (-1)^s e_s h_{r-s} = 0`.
    pub fn e_from_h(r: u32) -> Self {
        let mut es = vec![SymPoly::one()];
        for k in 1..=r {
            let mut acc = SymPoly::zero();
            for s in 0..k {
                let term = &es[s as usize] * &SymPoly::h(k - s);
                acc = if s % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            // (-1)^k e_k = -acc
            es.push(if k % 2 == 0 {
                acc.scale(&GRat::from_int(-1))
            } else {
                acc
            });
        }
        es.pop().unwrap()
    }

    /// The power sum `p_k` via Newton's identity `k h_k = sum_i p_i h_{k-i}`.
    pub fn power_sum(k: u32) -> Self {
        let mut ps: Vec<SymPoly> = vec![SymPoly::zero()];
        for m in 1..=k {
            let mut acc = SymPoly::h(m).scale(&GRat::from_int(m as i64));
            for i in 1..m {
                acc = &acc - &(&ps[i as usize] * &SymPoly::h(m - i));
            }
            ps.push(acc);
        }
        ps.pop().unwrap()
    }

    /// Evaluates in `n` commuting variables, giving an ordinary polynomial.
    pub fn to_variables(&self, n: usize) -> MPoly {
        let deg = self.0.terms().keys().map(|m| m.len()).max().unwrap_or(0);
        let images: Vec<MPoly> = (1..=deg)
            .map(|r| complete_homogeneous(r as u32, n))
            .collect();
        self.0.substitute(&images)
    }
}

/// The complete homogeneous polynomial of degree `r` in `n` variables.
pub fn complete_homogeneous(r: u32, n: usize) -> MPoly {
    fn rec(var: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut MPoly) {
        if var + 1 == n {
            cur.push(left);
            out.add_term(cur.clone(), GRat::one());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(var + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = MPoly::zero();
    if n == 0 {
        if r == 0 {
            out = MPoly::one();
        }
        return out;
    }
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// `x_1^k + ... + x_n^k` as an ordinary polynomial.
pub fn power_sum_variables(k: u32, n: usize) -> MPoly {
    let mut out = MPoly::zero();
    for i in 0..n {
        let mut m = vec![0; i + 1];
        m[i] = k;
        out.add_term(m, GRat::one());
    }
    out
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.render(|k| format!("h{}", k + 1), weight))
    }
}

impl FromStr for SymPoly {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let var = |name: &str| -> Option<usize> {
            let k: usize = name.strip_prefix('h')?.parse().ok()?;
            k.checked_sub(1)
        };
        Ok(SymPoly(MPoly::parse_with(s, var)?))
    }
}

impl<'a> Add<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn add(self, o: &SymPoly) -> SymPoly {
        SymPoly(&self.0 + &o.0)
    }
}

impl<'a> Sub<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn sub(self, o: &SymPoly) -> SymPoly {
        SymPoly(&self.0 - &o.0)
    }
}

impl<'a> Mul<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn mul(self, o: &SymPoly) -> SymPoly {
        SymPoly(&self.0 * &o.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> SymPoly {
        t.parse().unwrap()
    }

    #[test]
    fn elementary_from_complete() {
        assert_eq!(SymPoly::e_from_h(1), s("h1"));
        assert_eq!(SymPoly::e_from_h(2), s("h1^2 - h2"));
        assert_eq!(SymPoly::e_from_h(0), SymPoly::one());
    }

    #[test]
    fn generating_function_identity() {
        for r in 1..=6u32 {
            let mut acc = SymPoly::zero();
            for k in 0..=r {
                let t = &SymPoly::e_from_h(k) * &SymPoly::h(r - k);
                acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            assert_eq!(acc, SymPoly::zero(), "degree {r}");
        }
    }

    #[test]
    fn power_sums_in_variables() {
        assert_eq!(SymPoly::power_sum(1), s("h1"));
        for k in 1..=4 {
            for n in 1..=3 {
                assert_eq!(
                    SymPoly::power_sum(k).to_variables(n),
                    power_sum_variables(k, n)
                );
            }
        }
    }

    #[test]
    fn elementary_vanish_beyond_variable_count() {
        assert!(SymPoly::e_from_h(3).to_variables(2).is_zero());
        assert!(!SymPoly::e_from_h(2).to_variables(2).is_zero());
    }

    #[test]
    fn text_roundtrip() {
        let p = s("h1^2 - h2");
        assert_eq!(p.to_string(), "h1^2 - h2");
    }
}
