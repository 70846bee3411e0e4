//! A truncated generic Verma supermodule for q(n), free as a right module over the
//! polynomial ring in `h_1..h_n`, with the q(n) action computed by straightening.
//!
//! Basis symbols are `f^a fbar^b hbar^c (x) u^`, with the lowering generators
//! `f_k = e^0_{i,j}`, `fbar_k = e^1_{i,j}` (`i > j`) numbered row-major over the pairs.

mod bracket;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::RwLock;

use thiserror::Error;

pub use bracket::{decompose, superbracket, BracketTable, GenCombo};

use crate::diagrams::Expr;
use crate::qrep::{Evaluator, QGen, QnContext, QrepError, TVec, TailModule};
use crate::scalars::{mono_mul, GRat, MPoly, Mono};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaError {
    #[error("n = {0} is out of range for the Verma module (1..=11)")]
    BadRank(usize),
    #[error(transparent)]
    Qrep(#[from] QrepError),
}

/// How much of the module is kept. Terms beyond either bound are dropped and the
/// module records that it happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    /// Largest degree of the right `h`-polynomial retained.
    pub max_degree: u32,
    /// Largest total exponent of the lowering monomial retained.
    pub max_lowering: u32,
}

impl Truncation {
    pub fn new(max_degree: u32, max_lowering: u32) -> Truncation {
        Truncation {
            max_degree,
            max_lowering,
        }
    }
}

/// `f^a fbar^b hbar^c`; bit `k` of `b` is `fbar_{k+1}`, bit `i` of `c` is `hbar_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Sym {
    pub a: Vec<u32>,
    pub b: u64,
    pub c: u64,
}

impl Sym {
    pub fn hat(n: usize) -> Sym {
        Sym {
            a: vec![0; n * (n - 1) / 2],
            b: 0,
            c: 0,
        }
    }

    pub fn parity(&self) -> bool {
        (self.b.count_ones() + self.c.count_ones()) % 2 == 1
    }

    pub fn lowering_len(&self) -> u32 {
        self.a.iter().sum::<u32>() + self.b.count_ones()
    }

    /// PBW position of the leftmost lowering factor (odd ones offset by `N`).
    fn first(&self) -> Option<usize> {
        let big_n = self.a.len();
        self.a
            .iter()
            .position(|&e| e > 0)
            .or_else(|| (self.b != 0).then(|| big_n + self.b.trailing_zeros() as usize))
    }

    fn bump(&mut self, k: usize, up: bool) {
        let big_n = self.a.len();
        if k < big_n {
            if up {
                self.a[k] += 1;
            } else {
                self.a[k] -= 1;
            }
        } else {
            self.b ^= 1 << (k - big_n);
        }
    }
}

/// A basis element of the module: a symbol times a monomial in the `h_i` on the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VBasis {
    pub sym: Sym,
    pub h: Mono,
}

impl VBasis {
    pub fn hat(n: usize) -> VBasis {
        VBasis {
            sym: Sym::hat(n),
            h: Mono::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.h.iter().sum()
    }
}

/// Linear combination of symbols with right polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VermaVector {
    terms: BTreeMap<Sym, MPoly>,
}

impl VermaVector {
    pub fn zero() -> VermaVector {
        VermaVector::default()
    }

    pub fn basis(s: Sym) -> VermaVector {
        Self::term(s, MPoly::one())
    }

    pub fn term(s: Sym, p: MPoly) -> VermaVector {
        let mut v = VermaVector::zero();
        v.add_term(s, &p);
        v
    }

    pub fn terms(&self) -> &BTreeMap<Sym, MPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Sym, p: &MPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(s.clone()).or_insert_with(MPoly::zero);
        *e = &*e + p;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add_scaled(&mut self, o: &VermaVector, c: &GRat) {
        for (s, p) in &o.terms {
            self.add_term(s.clone(), &p.scale(c));
        }
    }

    pub fn scaled(&self, c: &GRat) -> VermaVector {
        let mut out = VermaVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul_right(&self, p: &MPoly) -> VermaVector {
        let mut out = VermaVector::zero();
        for (s, q) in &self.terms {
            out.add_term(s.clone(), &(q * p));
        }
        out
    }

    /// Degree of the right polynomial part (the grading); `None` for zero.
    pub fn grading(&self) -> Option<u32> {
        self.terms.values().filter_map(MPoly::degree).max()
    }

    pub fn top_component(&self) -> VermaVector {
        let Some(d) = self.grading() else {
            return VermaVector::zero();
        };
        let mut out = VermaVector::zero();
        for (s, p) in &self.terms {
            out.add_term(s.clone(), &p.component(d, |_| 1));
        }
        out
    }

    pub fn from_basis(items: impl IntoIterator<Item = (VBasis, GRat)>) -> VermaVector {
        let mut out = VermaVector::zero();
        for (b, c) in items {
            out.add_term(b.sym, &MPoly::monomial(b.h, c));
        }
        out
    }

    pub fn to_basis(&self) -> Vec<(VBasis, GRat)> {
        let mut out = Vec::new();
        for (s, p) in &self.terms {
            for (m, c) in p.terms() {
                out.push((
                    VBasis {
                        sym: s.clone(),
                        h: m.clone(),
                    },
                    c.clone(),
                ));
            }
        }
        out
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.a.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "f{} ", k + 1)?,
                _ => write!(f, "f{}^{} ", k + 1, e)?,
            }
        }
        for k in 0..64 {
            if self.b >> k & 1 == 1 {
                write!(f, "fb{} ", k + 1)?;
            }
        }
        for k in 0..64 {
            if self.c >> k & 1 == 1 {
                write!(f, "hb{} ", k + 1)?;
            }
        }
        write!(f, "u")
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (s, p) in &self.terms {
            let poly = p.render(|k| format!("h{}", k + 1), |_| 1);
            writeln!(f, "{s} * ({poly})")?;
        }
        Ok(())
    }
}

/// The module with its straightening cache.
pub struct Verma {
    pub ctx: QnContext,
    pub trunc: Truncation,
    brackets: BracketTable,
    memo: Option<RwLock<HashMap<(QGen, Sym), VermaVector>>>,
    truncated: AtomicBool,
}

impl Verma {
    pub fn new(n: usize, trunc: Truncation) -> Result<Verma, VermaError> {
        if n == 0 || n > 11 {
            return Err(VermaError::BadRank(n));
        }
        let ctx = QnContext::new(n)?.with_cap(usize::MAX);
        Ok(Verma {
            ctx,
            trunc,
            brackets: BracketTable::new(&ctx)?,
            memo: Some(RwLock::default()),
            truncated: AtomicBool::new(false),
        })
    }

    /// Same module without memoization.
    pub fn uncached(n: usize, trunc: Truncation) -> Result<Verma, VermaError> {
        let mut v = Self::new(n, trunc)?;
        v.memo = None;
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    /// Whether any operation so far dropped terms.
    pub fn truncation_hit(&self) -> bool {
        self.truncated.load(Ordering::Relaxed)
    }

    pub fn reset_truncation(&self) {
        self.truncated.store(false, Ordering::Relaxed);
    }

    pub fn hat(&self) -> VermaVector {
        VermaVector::basis(Sym::hat(self.n()))
    }

    pub fn lowering_count(&self) -> usize {
        self.n() * (self.n() - 1) / 2
    }

    /// PBW position of a lowering generator.
    pub fn lowering_index(&self, g: QGen) -> Option<usize> {
        (!g.tilde && g.i > g.j)
            .then(|| g.i * (g.i - 1) / 2 + g.j + if g.odd { self.lowering_count() } else { 0 })
    }

    fn lowering_gen(&self, k: usize) -> QGen {
        let big_n = self.lowering_count();
        let (odd, mut r) = if k < big_n {
            (false, k)
        } else {
            (true, k - big_n)
        };
        let mut i = 1;
        while r >= i {
            r -= i;
            i += 1;
        }
        QGen::e(odd, i, r)
    }

    /// `g . v`, truncated.
    pub fn act(&self, g: QGen, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero();
        for (s, p) in &v.terms {
            let w = self.act_sym(g, s).mul_right(p);
            for (s2, p2) in w.terms {
                let keep = self.clip(&s2, p2);
                out.add_term(s2, &keep);
            }
        }
        out
    }

    fn clip(&self, s: &Sym, p: MPoly) -> MPoly {
        if s.lowering_len() > self.trunc.max_lowering {
            self.truncated.store(true, Ordering::Relaxed);
            return MPoly::zero();
        }
        let mut out = MPoly::zero();
        for (m, c) in p.into_terms() {
            if m.iter().sum::<u32>() > self.trunc.max_degree {
                self.truncated.store(true, Ordering::Relaxed);
            } else {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Applies a word of generators, rightmost first.
    pub fn act_word(&self, word: &[QGen], v: &VermaVector) -> VermaVector {
        word.iter()
            .rev()
            .fold(v.clone(), |acc, g| self.act(*g, &acc))
    }

    fn act_exact(&self, g: QGen, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero();
        for (s, p) in &v.terms {
            let w = self.act_sym(g, s);
            out.add_scaled(&w.mul_right(p), &GRat::one());
        }
        out
    }

    fn act_sym(&self, g: QGen, s: &Sym) -> VermaVector {
        assert!(!g.tilde, "only e^eps_(i,j) act on the Verma module");
        let key = (g, s.clone());
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.read().expect("memo lock").get(&key) {
                return v.clone();
            }
        }
        let v = self.straighten(g, s);
        if let Some(memo) = &self.memo {
            memo.write().expect("memo lock").insert(key, v.clone());
        }
        v
    }

    fn straighten(&self, g: QGen, s: &Sym) -> VermaVector {
        let low = self.lowering_index(g);
        let Some(y) = s.first() else {
            return self.on_cartan_part(g, low, s);
        };
        if let Some(k) = low {
            if k < y || (k == y && !g.odd) {
                let mut t = s.clone();
                t.bump(k, true);
                return VermaVector::basis(t);
            }
        }
        let mut rest = s.clone();
        rest.bump(y, false);
        let w = VermaVector::basis(rest);
        let yg = self.lowering_gen(y);
        let mut out = VermaVector::zero();
        if low == Some(y) {
            // odd g with g g = [g, g] / 2
            let half = GRat::from_frac(1, 2).expect("nonzero");
            for (h, c) in self.brackets.get(g, g) {
                out.add_scaled(&self.act_exact(*h, &w), &(c * &half));
            }
            return out;
        }
        let sign = if g.odd && yg.odd { -1 } else { 1 };
        let gw = self.act_exact(g, &w);
        out.add_scaled(&self.act_exact(yg, &gw), &GRat::from_int(sign));
        for (h, c) in self.brackets.get(g, yg) {
            out.add_scaled(&self.act_exact(*h, &w), c);
        }
        out
    }

    /// Action on `hbar^c (x) u^`.
    fn on_cartan_part(&self, g: QGen, low: Option<usize>, s: &Sym) -> VermaVector {
        if let Some(k) = low {
            let mut t = s.clone();
            t.bump(k, true);
            return VermaVector::basis(t);
        }
        if g.i != g.j {
            return VermaVector::zero();
        }
        let i = g.i;
        if !g.odd {
            return VermaVector::term(s.clone(), MPoly::var(i));
        }
        let sign = if (s.c & ((1u64 << i) - 1)).count_ones() % 2 == 1 {
            -1
        } else {
            1
        };
        let mut t = s.clone();
        t.c ^= 1 << i;
        let p = if s.c >> i & 1 == 1 {
            MPoly::var(i)
        } else {
            MPoly::one()
        };
        VermaVector::term(t, p.scale(&GRat::from_int(sign)))
    }

    /// `v_{idx} (x) u^` as an input to `psi_m`.
    pub fn input(&self, idx: &[u8]) -> TVec<VBasis> {
        [((idx.to_vec(), VBasis::hat(self.n())), GRat::one())]
            .into_iter()
            .collect()
    }

    /// `v_r (x) ... (x) v_1 (x) u^`, using indices `1..=r` (needs `r <= n`).
    pub fn standard_input(&self, r: usize) -> TVec<VBasis> {
        let idx: Vec<u8> = (0..r).rev().map(|k| k as u8).collect();
        self.input(&idx)
    }

    /// `Psi(e)` evaluated on `V^{src} (x) M`, applied to `v`.
    pub fn psi_m(&self, e: &Expr, v: &TVec<VBasis>) -> TVec<VBasis> {
        Evaluator::new(self.ctx, self).apply_expr(e, v)
    }
}

impl TailModule for Verma {
    type Elem = VBasis;

    fn parity(&self, e: &VBasis) -> bool {
        e.sym.parity()
    }

    fn act(&self, g: QGen, e: &VBasis) -> Vec<(VBasis, GRat)> {
        let w = self.act_sym(g, &e.sym);
        let mut out = Vec::new();
        for (s, p) in w.terms {
            let keep = self.clip(
                &s,
                p.into_terms()
                    .into_iter()
                    .map(|(m, c)| (mono_mul(&m, &e.h), c))
                    .fold(MPoly::zero(), |mut acc, (m, c)| {
                        acc.add_term(m, c);
                        acc
                    }),
            );
            for (m, c) in keep.into_terms() {
                out.push((
                    VBasis {
                        sym: s.clone(),
                        h: m,
                    },
                    c,
                ));
            }
        }
        out
    }
}

/// Highest-grading part of a vector in `V^r (x) M`.
pub fn top_component(v: &TVec<VBasis>) -> TVec<VBasis> {
    let Some(d) = v.keys().map(|(_, b)| b.degree()).max() else {
        return TVec::new();
    };
    v.iter()
        .filter(|((_, b), _)| b.degree() == d)
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect()
}

/// `h_1^{e_1} ... h_n^{e_n}` as a monomial.
pub fn h_mono(exps: &[u32]) -> Mono {
    let mut m = exps.to_vec();
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn verma(n: usize) -> Verma {
        Verma::new(n, Truncation::new(8, 8)).unwrap()
    }

    #[test]
    fn cartan_on_hat() {
        let m = verma(3);
        for i in 0..3 {
            let v = m.act(QGen::e(false, i, i), &m.hat());
            assert_eq!(v, VermaVector::term(Sym::hat(3), MPoly::var(i)));
        }
    }

    #[test]
    fn raising_kills_hat() {
        let m = verma(2);
        for odd in [false, true] {
            assert!(m.act(QGen::e(odd, 0, 1), &m.hat()).is_zero());
        }
    }

    #[test]
    fn lowering_on_hat_is_a_basis_vector() {
        let m = verma(3);
        for odd in [false, true] {
            for i in 0..3 {
                for j in 0..i {
                    let g = QGen::e(odd, i, j);
                    let mut s = Sym::hat(3);
                    s.bump(m.lowering_index(g).unwrap(), true);
                    let v = m.act(g, &m.hat());
                    assert_eq!(v, VermaVector::basis(s));
                    assert_eq!(v.grading(), Some(0));
                }
            }
        }
    }

    #[test]
    fn odd_cartan_squares_to_even() {
        let m = verma(2);
        let hb = QGen::e(true, 1, 1);
        let v = m.act(hb, &m.act(hb, &m.hat()));
        assert_eq!(v, VermaVector::term(Sym::hat(2), MPoly::var(1)));
    }

    #[test]
    fn lowering_index_roundtrip() {
        let m = verma(4);
        for k in 0..2 * m.lowering_count() {
            assert_eq!(m.lowering_index(m.lowering_gen(k)), Some(k));
        }
    }

    fn gen_strategy(n: usize) -> impl Strategy<Value = QGen> {
        (any::<bool>(), 0..n, 0..n).prop_map(|(o, i, j)| QGen::e(o, i, j))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn filtration_discipline(word in prop::collection::vec(gen_strategy(3), 1..6)) {
            let m = verma(3);
            let v = m.act_word(&word, &m.hat());
            let raising = word.iter().filter(|g| m.lowering_index(**g).is_none()).count() as u32;
            prop_assert!(!m.truncation_hit());
            if let Some(d) = v.grading() {
                prop_assert!(d <= raising);
            }
        }

        #[test]
        fn act_respects_bracket(g1 in gen_strategy(3), g2 in gen_strategy(3), word in prop::collection::vec(gen_strategy(3), 0..4)) {
            let m = verma(3);
            let v = m.act_word(&word, &m.hat());
            let sign = if g1.odd && g2.odd { -1 } else { 1 };
            let mut lhs = m.act(g1, &m.act(g2, &v));
            lhs.add_scaled(&m.act(g2, &m.act(g1, &v)), &GRat::from_int(-sign));
            let mut rhs = VermaVector::zero();
            for (h, c) in m.brackets.get(g1, g2) {
                rhs.add_scaled(&m.act(*h, &v), c);
            }
            prop_assert!(!m.truncation_hit());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cache_is_transparent(word in prop::collection::vec(gen_strategy(3), 1..5)) {
            let a = verma(3);
            let b = Verma::uncached(3, Truncation::new(8, 8)).unwrap();
            prop_assert_eq!(a.act_word(&word, &a.hat()), b.act_word(&word, &b.hat()));
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let m = Verma::new(2, Truncation::new(1, 8)).unwrap();
        let h = QGen::e(false, 0, 0);
        let v = m.act_word(&[h, h], &m.hat());
        assert!(v.is_zero());
        assert!(m.truncation_hit());
    }
}
