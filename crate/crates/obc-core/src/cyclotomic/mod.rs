//! Cyclotomic quotients: the data `f, f'`, the series `delta, delta'`, reduction of
//! morphisms to the basis with fewer than `l` dots per strand, and the transport of
//! Hom-spaces to endomorphisms of `up^r`.

mod reduce;
mod transport;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;
use thiserror::Error;

pub use reduce::{cyclo_dim, gamma_reduce, obcf_bridge, set_equivalence, CycloReducer, GenSet};
pub use transport::HomTransport;

use crate::algebras::AlgebraError;
use crate::diagrams::Word;
use crate::normalform::{NormalError, NormalKey};
use crate::scalars::{BubblePoly, GRat, MPoly, ScalarError};
use crate::suites::Report;

#[derive(Debug, Error)]
pub enum CycloError {
    #[error("f must be monic with only powers of the parity of its degree: {0}")]
    BadShape(String),
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Hom({0}, {1}) is zero: the words carry different flow")]
    FlowMismatch(String, String),
    #[error("reduction did not terminate within {0} steps")]
    Diverged(usize),
    #[error("leading coefficient of an ideal element is not a unit: {0}")]
    NotUnit(String),
    #[error("request is unbounded: {0}")]
    Unbounded(String),
}

/// Level `l`, coefficients `z_0 = 1, z_1, ..., z_m` of `f(u) = sum z_s u^(l-2s)`, and the
/// same for `f'`. When `zprime` is `None`, `z'_1..z'_m` are indeterminates: variable
/// `k` of the coefficient ring stands for `z'_(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloData {
    pub l: u32,
    pub z: Vec<GRat>,
    pub zprime: Option<Vec<GRat>>,
}

fn series_inverse(c: &[MPoly], precision: usize) -> Vec<MPoly> {
    // c[0] = 1
    let mut inv = vec![MPoly::one()];
    for n in 1..=precision {
        let mut acc = MPoly::zero();
        for s in 1..c.len().min(n + 1) {
            acc = &acc + &(&c[s] * &inv[n - s]);
        }
        inv.push(-&acc);
    }
    inv
}

fn series_mul(a: &[MPoly], b: &[MPoly], precision: usize) -> Vec<MPoly> {
    (0..=precision)
        .map(|n| {
            let mut acc = MPoly::zero();
            for i in 0..=n {
                if let (Some(x), Some(y)) = (a.get(i), b.get(n - i)) {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
        .collect()
}

impl CycloData {
    pub fn new(l: u32, z: Vec<GRat>, zprime: Option<Vec<GRat>>) -> Result<CycloData, CycloError> {
        if l == 0 {
            return Err(CycloError::ZeroLevel);
        }
        let m = (l / 2) as usize;
        let check = |v: &[GRat], name: &str| {
            if v.len() != m + 1 || !v[0].is_one() {
                return Err(CycloError::BadShape(format!(
                    "{name} needs {} coefficients starting with 1",
                    m + 1
                )));
            }
            Ok(())
        };
        check(&z, "f")?;
        if let Some(zp) = &zprime {
            check(zp, "f'")?;
        }
        Ok(CycloData { l, z, zprime })
    }

    /// From the coefficients of `f`, lowest degree first.
    pub fn from_f(f: &[GRat], zprime: Option<Vec<GRat>>) -> Result<CycloData, CycloError> {
        let (l, z) = even_gap(f)?;
        CycloData::new(l, z, zprime)
    }

    /// Parses a polynomial in `t` such as `t^2-3`.
    pub fn parse_poly(text: &str) -> Result<Vec<GRat>, CycloError> {
        let p = MPoly::parse_with(text, |v| (v == "t" || v == "u").then_some(0))?;
        let deg = p.degree().unwrap_or(0) as usize;
        let mut out = vec![GRat::zero(); deg + 1];
        for (m, c) in p.terms() {
            out[m.first().copied().unwrap_or(0) as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        (self.l / 2) as usize
    }

    pub fn is_formal(&self) -> bool {
        self.zprime.is_none()
    }

    /// `z'_s` as an element of the coefficient ring.
    pub fn zprime_coeff(&self, s: usize) -> MPoly {
        match (&self.zprime, s) {
            (_, 0) => MPoly::one(),
            (Some(zp), _) => MPoly::constant(zp[s].clone()),
            (None, _) => MPoly::var(s - 1),
        }
    }

    fn z_series(&self) -> Vec<MPoly> {
        self.z.iter().cloned().map(MPoly::constant).collect()
    }

    fn zprime_series(&self) -> Vec<MPoly> {
        (0..=self.m()).map(|s| self.zprime_coeff(s)).collect()
    }

    /// `delta_0..delta_precision` from `delta(u^2) = f'(u) / f(u)`.
    pub fn delta_series(&self, precision: usize) -> Vec<MPoly> {
        series_mul(
            &self.zprime_series(),
            &series_inverse(&self.z_series(), precision),
            precision,
        )
    }

    /// `delta'_0..delta'_precision` from `delta'(u^2) = -f(u) / f'(u)`.
    pub fn delta_prime_series(&self, precision: usize) -> Vec<MPoly> {
        series_mul(
            &self.z_series(),
            &series_inverse(&self.zprime_series(), precision),
            precision,
        )
        .iter()
        .map(|p| -p)
        .collect()
    }

    pub fn delta(&self, r: usize) -> MPoly {
        self.delta_series(r)[r].clone()
    }

    pub fn delta_prime(&self, r: usize) -> MPoly {
        self.delta_prime_series(r)[r].clone()
    }

    /// Coefficients of `f`, lowest degree first.
    pub fn f_coeffs(&self) -> Vec<GRat> {
        let mut out = vec![GRat::zero(); self.l as usize + 1];
        for (s, c) in self.z.iter().enumerate() {
            out[self.l as usize - 2 * s] = c.clone();
        }
        out
    }

    /// Coefficients of `f'`, lowest degree first.
    pub fn fprime_coeffs(&self) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.l as usize + 1];
        for s in 0..=self.m() {
            out[self.l as usize - 2 * s] = self.zprime_coeff(s);
        }
        out
    }

    /// Sends the counterclockwise bubble with `2r-1` dots to `delta_r`.
    pub fn specialize(&self, p: &BubblePoly) -> MPoly {
        let top = p
            .as_mpoly()
            .terms()
            .keys()
            .map(|m| m.len())
            .max()
            .unwrap_or(0);
        let deltas = self.delta_series(top);
        let images: Vec<MPoly> = (1..=top).map(|r| deltas[r].clone()).collect();
        p.as_mpoly().substitute(&images)
    }

    /// The relations between `z`, `z'` and `delta`, and `delta * delta' = -1`, up to `precision`.
    pub fn check_e1_e2(&self, precision: usize) -> Report {
        let mut rep = Report::new("cyclo-series");
        let delta = self.delta_series(precision);
        let m = self.m();
        let mut ok = true;
        for r in 0..=precision {
            let mut acc = MPoly::zero();
            for s in 0..=r.min(m) {
                acc = &acc + &(&MPoly::constant(self.z[s].clone()) * &delta[r - s]);
            }
            let want = if r <= m {
                self.zprime_coeff(r)
            } else {
                MPoly::zero()
            };
            ok &= acc == want;
        }
        rep.check(
            "sum_s z_s delta_(r-s) = z'_r, and 0 beyond l/2",
            ok,
            format!("precision {precision}"),
        );
        let prod = series_mul(&delta, &self.delta_prime_series(precision), precision);
        let ok = prod.iter().enumerate().all(|(k, p)| {
            *p == if k == 0 {
                MPoly::constant(GRat::from_int(-1))
            } else {
                MPoly::zero()
            }
        });
        rep.check("delta(u) delta'(u) = -1", ok, "");
        rep.check(
            "delta_0 = 1, delta'_0 = -1",
            delta[0].is_one_poly() && self.delta_prime(0) == MPoly::constant(GRat::from_int(-1)),
            "",
        );
        rep
    }

    pub fn to_json(&self) -> serde_json::Value {
        let zprime = match &self.zprime {
            Some(v) => json!(v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            None => json!("formal"),
        };
        let delta: Vec<String> = self
            .delta_series(self.m().max(1) + 2)
            .iter()
            .map(render_k)
            .collect();
        json!({
            "l": self.l,
            "z": self.z.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "zprime": zprime,
            "delta": delta,
        })
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for MPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

/// Renders an element of the coefficient ring with `z'k` names.
pub fn render_k(p: &MPoly) -> String {
    p.render(|k| format!("z'{}", k + 1), |_| 1)
}

/// Splits monic `f` into its level and even-gap coefficients.
fn even_gap(f: &[GRat]) -> Result<(u32, Vec<GRat>), CycloError> {
    let mut f = f.to_vec();
    while f.last().is_some_and(GRat::is_zero) {
        f.pop();
    }
    let Some(lead) = f.last() else {
        return Err(CycloError::BadShape("f = 0".into()));
    };
    if !lead.is_one() {
        return Err(CycloError::BadShape("not monic".into()));
    }
    let l = f.len() - 1;
    if l == 0 {
        return Err(CycloError::ZeroLevel);
    }
    let mut z = Vec::new();
    for (d, c) in f.iter().enumerate() {
        if (l - d) % 2 == 1 && !c.is_zero() {
            return Err(CycloError::BadShape(format!(
                "coefficient of t^{d} must vanish"
            )));
        }
    }
    for s in 0..=l / 2 {
        z.push(f[l - 2 * s].clone());
    }
    Ok((l as u32, z))
}

/// A morphism in the cyclotomic quotient: normal keys with coefficients in the ring of
/// `z'` polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMorphism {
    pub src: Word,
    pub dst: Word,
    terms: BTreeMap<NormalKey, MPoly>,
}

impl CycloMorphism {
    pub fn zero(src: Word, dst: Word) -> CycloMorphism {
        CycloMorphism {
            src,
            dst,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<NormalKey, MPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &NormalKey) -> MPoly {
        self.terms.get(k).cloned().unwrap_or_else(MPoly::zero)
    }

    pub fn add_term(&mut self, k: NormalKey, c: MPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(MPoly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, o: &CycloMorphism, s: &MPoly) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn sub(&self, o: &CycloMorphism) -> CycloMorphism {
        let mut out = self.clone();
        out.add_scaled(o, &MPoly::constant(GRat::from_int(-1)));
        out
    }

    /// Largest number of dots on one strand.
    pub fn max_strand_dots(&self) -> u32 {
        self.terms
            .keys()
            .map(NormalKey::max_dots)
            .max()
            .unwrap_or(0)
    }

    /// Splits coefficients into `z'`-monomials.
    pub fn components(&self) -> BTreeMap<Vec<u32>, BTreeMap<NormalKey, GRat>> {
        let mut out: BTreeMap<Vec<u32>, BTreeMap<NormalKey, GRat>> = BTreeMap::new();
        for (k, c) in &self.terms {
            for (m, x) in c.terms() {
                out.entry(m.clone())
                    .or_default()
                    .insert(k.clone(), x.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "src": self.src.to_string(),
            "dst": self.dst.to_string(),
            "terms": self.terms.iter().map(|(k, c)| json!({ "key": k.to_json(), "coeff": render_k(c) })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CycloMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({}) {}", render_k(c), k))
            .collect();
        write!(f, "{}", parts.join("\n+ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<GRat> {
        v.iter().map(|&c| GRat::from_int(c)).collect()
    }

    #[test]
    fn parse_and_shape() {
        let f = CycloData::parse_poly("t^2-3").unwrap();
        assert_eq!(f, q(&[-3, 0, 1]));
        let d = CycloData::from_f(&f, None).unwrap();
        assert_eq!((d.l, d.z.clone()), (2, q(&[1, -3])));
        assert!(CycloData::from_f(&q(&[1, 1, 1]), None).is_err());
        assert!(CycloData::from_f(&q(&[0, 0, 2]), None).is_err());
        assert!(CycloData::from_f(&q(&[0, 1]), None).is_ok());
    }

    #[test]
    fn geometric_series() {
        // f = t^2 - m with f' = u^2: delta = 1 / (1 - m v)
        let d = CycloData::new(2, q(&[1, -5]), Some(q(&[1, 0]))).unwrap();
        let s = d.delta_series(4);
        for (r, x) in s.iter().enumerate() {
            assert_eq!(x.as_constant().unwrap(), GRat::from_int(5i64.pow(r as u32)));
        }
    }

    #[test]
    fn equal_polynomials_give_trivial_series() {
        let d = CycloData::new(3, q(&[1, 7]), Some(q(&[1, 7]))).unwrap();
        let s = d.delta_series(5);
        let p = d.delta_prime_series(5);
        for r in 1..=5 {
            assert!(s[r].is_zero() && p[r].is_zero());
        }
        assert!(s[0].is_one_poly());
    }

    #[test]
    fn formal_first_delta() {
        let d = CycloData::new(2, q(&[1, 4]), None).unwrap();
        assert_eq!(
            d.delta(1),
            &MPoly::var(0) - &MPoly::constant(GRat::from_int(4))
        );
    }

    #[test]
    fn series_relations_hold() {
        for d in [
            CycloData::new(2, q(&[1, -3]), None).unwrap(),
            CycloData::new(4, q(&[1, 2, -1]), Some(q(&[1, 0, 5]))).unwrap(),
            CycloData::new(5, q(&[1, 1, 1]), None).unwrap(),
        ] {
            let rep = d.check_e1_e2(8);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn clockwise_specialization_matches_series() {
        // clockwise bubbles written in counterclockwise ones, then specialized
        let d = CycloData::new(4, q(&[1, 2, -1]), None).unwrap();
        for r in 1..=4 {
            let cw = crate::scalars::delta_prime(2 * r as u32 - 1);
            assert_eq!(d.specialize(&cw), d.delta_prime(r), "r = {r}");
        }
    }
}
