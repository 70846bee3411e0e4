//! Presented superalgebras: Sergeev, degenerate affine Sergeev and its cyclotomic
//! quotients, with multiplication by straightening, plus the maps into the diagram
//! categories.
//!
//! Algebra indices are 0-based here; index 0 is strand 1 in the usual numbering, the rightmost one.

mod cyclo;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use cyclo::CycloSerg;
pub use maps::{
    aserg_relations, closure_dim, nu_image, phi_image, sergeev_relations, verify_presentation,
    walled_image, walled_relations, word_expr, AlgRelation, Perturbation, WGen,
};

use crate::scalars::GRat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator index {index} out of range for r = {r}")]
    Index { index: usize, r: usize },
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("r = {0} is too large (at most 16)")]
    TooLarge(usize),
}

/// Generators of the affine Sergeev superalgebra: `s_i` (swaps `i, i+1`), `c_i`, `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AGen {
    S(usize),
    C(usize),
    X(usize),
}

/// `x^a c^b w` with `w` in one-line notation, `w[j] = w(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AMono {
    pub a: Vec<u32>,
    pub b: u32,
    pub w: Vec<u8>,
}

impl AMono {
    pub fn one(r: usize) -> AMono {
        AMono {
            a: vec![0; r],
            b: 0,
            w: (0..r as u8).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.a.iter().sum()
    }

    pub fn parity(&self) -> bool {
        self.b.count_ones() % 2 == 1
    }

    fn right_descent(&self) -> Option<usize> {
        (0..self.w.len().saturating_sub(1)).find(|&i| self.w[i] > self.w[i + 1])
    }

    /// A reduced word for `w`: `w = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            w.swap(i, i + 1);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// The same monomial as a product of generators.
    pub fn to_word(&self) -> Vec<AGen> {
        let mut out = Vec::new();
        for (i, e) in self.a.iter().enumerate() {
            out.extend(std::iter::repeat_n(AGen::X(i), *e as usize));
        }
        for i in 0..self.a.len() {
            if self.b >> i & 1 == 1 {
                out.push(AGen::C(i));
            }
        }
        out.extend(self.reduced_word().into_iter().map(AGen::S));
        out
    }
}

impl fmt::Display for AMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, e) in self.a.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for i in 0..self.a.len() {
            if self.b >> i & 1 == 1 {
                parts.push(format!("c{}", i + 1));
            }
        }
        for i in self.reduced_word() {
            parts.push(format!("s{}", i + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AElem {
    terms: BTreeMap<AMono, GRat>,
}

impl AElem {
    pub fn zero() -> AElem {
        AElem::default()
    }

    pub fn mono(m: AMono) -> AElem {
        Self::term(m, GRat::one())
    }

    pub fn term(m: AMono, c: GRat) -> AElem {
        let mut e = AElem::zero();
        e.add_term(m, c);
        e
    }

    pub fn terms(&self) -> &BTreeMap<AMono, GRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: AMono, c: GRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(GRat::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, o: &AElem, s: &GRat) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add(&self, o: &AElem) -> AElem {
        let mut out = self.clone();
        out.add_scaled(o, &GRat::one());
        out
    }

    pub fn sub(&self, o: &AElem) -> AElem {
        let mut out = self.clone();
        out.add_scaled(o, &GRat::from_int(-1));
        out
    }

    pub fn scaled(&self, s: &GRat) -> AElem {
        let mut out = AElem::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(AMono::degree).max()
    }
}

impl fmt::Display for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c}) {m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The degenerate affine Sergeev superalgebra on `r` strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ASerg {
    pub r: usize,
}

impl ASerg {
    pub fn new(r: usize) -> Result<ASerg, AlgebraError> {
        if r > 16 {
            return Err(AlgebraError::TooLarge(r));
        }
        Ok(ASerg { r })
    }

    pub fn check(&self, g: AGen) -> Result<(), AlgebraError> {
        let (i, bound) = match g {
            AGen::S(i) => (i, self.r.saturating_sub(1)),
            AGen::C(i) | AGen::X(i) => (i, self.r),
        };
        if i >= bound {
            return Err(AlgebraError::Index {
                index: i,
                r: self.r,
            });
        }
        Ok(())
    }

    pub fn one(&self) -> AElem {
        AElem::mono(AMono::one(self.r))
    }

    pub fn gen(&self, g: AGen) -> Result<AElem, AlgebraError> {
        self.check(g)?;
        Ok(self.rmul(&self.one(), g))
    }

    pub fn word(&self, w: &[AGen]) -> Result<AElem, AlgebraError> {
        let mut cur = self.one();
        for g in w {
            self.check(*g)?;
            cur = self.rmul(&cur, *g);
        }
        Ok(cur)
    }

    /// `e * g`.
    pub fn rmul(&self, e: &AElem, g: AGen) -> AElem {
        let mut out = AElem::zero();
        for (m, c) in &e.terms {
            out.add_scaled(&self.rmul_mono(m, g), c);
        }
        out
    }

    pub fn mul(&self, x: &AElem, y: &AElem) -> AElem {
        let mut out = AElem::zero();
        for (m, c) in &y.terms {
            let mut cur = x.clone();
            for g in m.to_word() {
                cur = self.rmul(&cur, g);
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    fn rmul_mono(&self, m: &AMono, g: AGen) -> AElem {
        match g {
            AGen::S(i) => {
                let mut t = m.clone();
                t.w.swap(i, i + 1);
                AElem::mono(t)
            }
            AGen::C(j) => {
                // w c_j = c_{w(j)} w, then c_k joins c^b from the right
                let k = m.w[j] as usize;
                let sign = if (m.b >> (k + 1)).count_ones() % 2 == 1 {
                    -1
                } else {
                    1
                };
                let mut t = m.clone();
                t.b ^= 1 << k;
                AElem::term(t, GRat::from_int(sign))
            }
            AGen::X(j) => self.rmul_x(m, j),
        }
    }

    fn rmul_x(&self, m: &AMono, j: usize) -> AElem {
        let Some(i) = m.right_descent() else {
            let sign = if m.b >> j & 1 == 1 { -1 } else { 1 };
            let mut t = m.clone();
            t.a[j] += 1;
            return AElem::term(t, GRat::from_int(sign));
        };
        // m = m1 s_i
        let mut m1 = m.clone();
        m1.w.swap(i, i + 1);
        let e1 = AElem::mono(m1.clone());
        let cc = self.rmul(&self.rmul_mono(&m1, AGen::C(i)), AGen::C(i + 1));
        if j != i && j != i + 1 {
            return self.rmul(&self.rmul_x(&m1, j), AGen::S(i));
        }
        // s_i x_i = x_{i+1} s_i - 1 - c_i c_{i+1};  s_i x_{i+1} = x_i s_i + 1 - c_i c_{i+1}
        let (other, sign) = if j == i { (i + 1, -1) } else { (i, 1) };
        let mut out = self.rmul(&self.rmul_x(&m1, other), AGen::S(i));
        out.add_scaled(&e1, &GRat::from_int(sign));
        out.add_scaled(&cc, &GRat::from_int(-1));
        out
    }

    /// Monomials `x^a c^b w` with every `a_i < l`.
    pub fn truncated_basis(&self, l: u32) -> Vec<AMono> {
        let mut out = Vec::new();
        let perms = permutations(self.r);
        let mut a = vec![0u32; self.r];
        loop {
            for b in 0..1u32 << self.r {
                for w in &perms {
                    out.push(AMono {
                        a: a.clone(),
                        b,
                        w: w.clone(),
                    });
                }
            }
            let mut k = 0;
            while k < self.r && a[k] + 1 == l {
                a[k] = 0;
                k += 1;
            }
            if k == self.r || l == 0 {
                break;
            }
            a[k] += 1;
        }
        if l == 0 {
            out.clear();
        }
        out
    }
}

/// All permutations of `0..r` in one-line notation, lexicographic.
pub fn permutations(r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..r as u8).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..r)
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// The finite Sergeev superalgebra: the span of monomials without `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Serg {
    pub inner: ASerg,
}

impl Serg {
    pub fn new(r: usize) -> Result<Serg, AlgebraError> {
        Ok(Serg {
            inner: ASerg::new(r)?,
        })
    }

    pub fn basis(&self) -> Vec<AMono> {
        self.inner.truncated_basis(1)
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    pub fn mul(&self, x: &AElem, y: &AElem) -> AElem {
        self.inner.mul(x, y)
    }

    /// Structure constants as JSON: `basis[i] * basis[j] = sum coeff * basis[k]`.
    pub fn structure_constants(&self) -> serde_json::Value {
        structure_constants(&self.basis(), |a, b| {
            self.mul(&AElem::mono(a.clone()), &AElem::mono(b.clone()))
        })
    }
}

pub(crate) fn structure_constants(
    basis: &[AMono],
    mul: impl Fn(&AMono, &AMono) -> AElem,
) -> serde_json::Value {
    let index: BTreeMap<&AMono, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut table = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let p = mul(a, b);
            let coeffs: Vec<serde_json::Value> = p
                .terms()
                .iter()
                .map(|(m, c)| serde_json::json!([index[m], c]))
                .collect();
            table.push(serde_json::json!({ "i": i, "j": j, "product": coeffs }));
        }
    }
    serde_json::json!({
        "basis": basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "products": table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alg(r: usize) -> ASerg {
        ASerg::new(r).unwrap()
    }

    fn w(r: usize, g: &[AGen]) -> AElem {
        alg(r).word(g).unwrap()
    }

    use AGen::{C, S, X};

    #[test]
    fn clifford_relations() {
        assert_eq!(w(2, &[C(0), C(0)]), w(2, &[]));
        assert!(w(2, &[C(0), C(1)]).add(&w(2, &[C(1), C(0)])).is_zero());
        assert_eq!(w(2, &[S(0), C(0)]), w(2, &[C(1), S(0)]));
    }

    #[test]
    fn affine_relations() {
        let a = alg(2);
        let lhs = w(2, &[S(0), X(0)]);
        let mut rhs = w(2, &[X(1), S(0)]);
        rhs.add_scaled(&a.one(), &GRat::from_int(-1));
        rhs.add_scaled(&w(2, &[C(0), C(1)]), &GRat::from_int(-1));
        assert_eq!(lhs, rhs);
        assert!(w(2, &[C(0), X(0)]).add(&w(2, &[X(0), C(0)])).is_zero());
        assert_eq!(w(2, &[X(0), X(1)]), w(2, &[X(1), X(0)]));
        assert_eq!(w(2, &[C(1), X(0)]), w(2, &[X(0), C(1)]));
    }

    #[test]
    fn sergeev_dimensions() {
        for (r, d) in [(1, 2), (2, 8), (3, 48), (4, 384)] {
            assert_eq!(Serg::new(r).unwrap().dim(), d);
        }
    }

    #[test]
    fn monomial_words_roundtrip() {
        let a = alg(3);
        for m in a.truncated_basis(2) {
            assert_eq!(a.word(&m.to_word()).unwrap(), AElem::mono(m.clone()), "{m}");
        }
    }

    fn gen_strategy(r: usize) -> impl Strategy<Value = AGen> {
        prop_oneof![
            (0..r - 1).prop_map(S),
            (0..r).prop_map(C),
            (0..r).prop_map(X)
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn associative(x in prop::collection::vec(gen_strategy(3), 0..5),
                       y in prop::collection::vec(gen_strategy(3), 0..5),
                       z in prop::collection::vec(gen_strategy(3), 0..5)) {
            let a = alg(3);
            let (x, y, z) = (a.word(&x).unwrap(), a.word(&y).unwrap(), a.word(&z).unwrap());
            prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        }
    }
}
