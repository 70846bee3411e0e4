//! Tensor words in V and V*, the q(n) generators acting on them, and tail modules.

use std::collections::BTreeMap;

use super::matrix::SuperMatrix;
use super::{QnContext, QrepError};
use crate::diagrams::{Dir, Word};
use crate::scalars::GRat;

/// `e^eps_{i,j}` (or the gl-element `~e^eps_{i,j}` when `tilde`); indices are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QGen {
    pub tilde: bool,
    pub odd: bool,
    pub i: usize,
    pub j: usize,
}

impl QGen {
    pub fn e(odd: bool, i: usize, j: usize) -> QGen {
        QGen {
            tilde: false,
            odd,
            i,
            j,
        }
    }

    pub fn e_tilde(odd: bool, i: usize, j: usize) -> QGen {
        QGen {
            tilde: true,
            odd,
            i,
            j,
        }
    }

    /// Matrix units of the element on V as `(row, col, sign)`.
    pub fn units(self, n: usize) -> [(usize, usize, i64); 2] {
        let (i, j, ib, jb) = (self.i, self.j, self.i + n, self.j + n);
        let s = if self.tilde { -1 } else { 1 };
        if self.odd {
            [(ib, j, 1), (i, jb, s)]
        } else {
            [(i, j, 1), (ib, jb, s)]
        }
    }

    pub fn all(n: usize) -> Vec<QGen> {
        let mut out = Vec::new();
        for odd in [false, true] {
            for i in 0..n {
                for j in 0..n {
                    out.push(QGen::e(odd, i, j));
                }
            }
        }
        out
    }
}

pub fn parity_of(ctx: &QnContext, b: u8) -> bool {
    (b as usize) >= ctx.n
}

/// Action of a generator on one tensor factor: V for `Up`, V* (antipode action) for `Down`.
pub fn act_factor(ctx: &QnContext, g: QGen, dir: Dir, b: u8) -> Vec<(u8, i64)> {
    let b = b as usize;
    let mut out = Vec::new();
    for (r, c, s) in g.units(ctx.n) {
        match dir {
            Dir::Up => {
                if c == b {
                    out.push((r as u8, s));
                }
            }
            Dir::Down => {
                // X.v*_b = sum_a -(-1)^{p(X)p(b)} X[b][a] v*_a
                if r == b {
                    let koszul = if g.odd && b >= ctx.n { -1 } else { 1 };
                    out.push((c as u8, -s * koszul));
                }
            }
        }
    }
    out
}

/// Coproduct action on a pure tensor of factors, with Koszul signs.
pub fn act_word(ctx: &QnContext, g: QGen, dirs: &[Dir], idx: &[u8]) -> Vec<(Vec<u8>, i64)> {
    let mut out = Vec::new();
    let mut passed = false;
    for k in 0..idx.len() {
        let sign = if g.odd && passed { -1 } else { 1 };
        for (b, s) in act_factor(ctx, g, dirs[k], idx[k]) {
            let mut v = idx.to_vec();
            v[k] = b;
            out.push((v, s * sign));
        }
        passed ^= parity_of(ctx, idx[k]);
    }
    out
}

/// A q(n)-supermodule placed to the right of every diagram factor.
pub trait TailModule: Sync {
    type Elem: Ord + Clone + Send + Sync + std::fmt::Debug;
    fn parity(&self, e: &Self::Elem) -> bool;
    fn act(&self, g: QGen, e: &Self::Elem) -> Vec<(Self::Elem, GRat)>;
}

/// `V^a` for a word `a` (the trivial module when `a` is empty).
#[derive(Clone, Debug)]
pub struct TensorTail {
    pub ctx: QnContext,
    pub word: Word,
}

impl TensorTail {
    pub fn new(ctx: QnContext, word: Word) -> TensorTail {
        TensorTail { ctx, word }
    }

    pub fn basis(&self) -> Vec<Vec<u8>> {
        basis_of(&self.ctx, self.word.len())
    }
}

impl TailModule for TensorTail {
    type Elem = Vec<u8>;

    fn parity(&self, e: &Vec<u8>) -> bool {
        e.iter().fold(false, |p, b| p ^ parity_of(&self.ctx, *b))
    }

    fn act(&self, g: QGen, e: &Vec<u8>) -> Vec<(Vec<u8>, GRat)> {
        act_word(&self.ctx, g, self.word.letters(), e)
            .into_iter()
            .map(|(v, s)| (v, GRat::from_int(s)))
            .collect()
    }
}

/// All index tuples of length `len`, in mixed-radix order (first factor most significant).
pub fn basis_of(ctx: &QnContext, len: usize) -> Vec<Vec<u8>> {
    let d = ctx.dim_v();
    let total = d.pow(len as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0u8; len];
            for slot in v.iter_mut().rev() {
                *slot = (k % d) as u8;
                k /= d;
            }
            v
        })
        .collect()
}

pub fn encode(ctx: &QnContext, idx: &[u8]) -> usize {
    idx.iter().fold(0, |acc, b| acc * ctx.dim_v() + *b as usize)
}

pub fn parities(ctx: &QnContext, len: usize) -> Vec<bool> {
    basis_of(ctx, len)
        .iter()
        .map(|v| v.iter().fold(false, |p, b| p ^ parity_of(ctx, *b)))
        .collect()
}

/// `e^eps_{i,j}` or `~e^eps_{i,j}` on V, indices 1-based.
pub fn gen_matrix(
    ctx: &QnContext,
    tilde: bool,
    i: usize,
    j: usize,
    odd: bool,
) -> Result<SuperMatrix, QrepError> {
    ctx.check_index(i)?;
    ctx.check_index(j)?;
    let g = QGen {
        tilde,
        odd,
        i: i - 1,
        j: j - 1,
    };
    module_matrix(ctx, g, &"u".parse().expect("word"))
}

/// Coproduct action of a generator on `V^a`.
pub fn module_matrix(ctx: &QnContext, g: QGen, a: &Word) -> Result<SuperMatrix, QrepError> {
    if g.i >= ctx.n || g.j >= ctx.n {
        return Err(QrepError::IndexOutOfRange {
            index: g.i.max(g.j) + 1,
            n: ctx.n,
        });
    }
    let par = parities(ctx, a.len());
    let cols = basis_of(ctx, a.len())
        .iter()
        .map(|v| {
            let mut col = BTreeMap::new();
            for (w, s) in act_word(ctx, g, a.letters(), v) {
                *col.entry(encode(ctx, &w)).or_insert_with(GRat::zero) += &GRat::from_int(s);
            }
            col
        })
        .collect();
    Ok(SuperMatrix::from_columns(par.clone(), par, cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e00_is_identity_for_n1() {
        let ctx = QnContext::new(1).unwrap();
        let m = gen_matrix(&ctx, false, 1, 1, false).unwrap();
        assert_eq!(m, SuperMatrix::identity(vec![false, true]));
    }

    #[test]
    fn tilde_e_sends_v2bar_to_minus_v1bar() {
        let ctx = QnContext::new(2).unwrap();
        let m = gen_matrix(&ctx, true, 1, 2, false).unwrap();
        assert_eq!(m.get(0, 1), GRat::one());
        assert_eq!(m.get(2, 3), GRat::from_int(-1));
    }

    #[test]
    fn q_closed_under_bracket() {
        let ctx = QnContext::new(2).unwrap();
        let u: Word = "u".parse().unwrap();
        let gens: Vec<SuperMatrix> = QGen::all(2)
            .into_iter()
            .map(|g| module_matrix(&ctx, g, &u).unwrap())
            .collect();
        let span = super::super::linalg::rank(gens.iter().map(|m| m.flatten()));
        assert_eq!(span, 8);
        for a in &gens {
            for b in &gens {
                let br = a.supercommutator(b).unwrap();
                let mut all = gens.clone();
                all.push(br);
                assert_eq!(super::super::matrix::matrix_rank(&all), 8);
            }
        }
    }

    #[test]
    fn cartan_sum_kills_up_down() {
        let ctx = QnContext::new(2).unwrap();
        let w: Word = "ud".parse().unwrap();
        let mut total = SuperMatrix::zero(parities(&ctx, 2), parities(&ctx, 2));
        for i in 0..2 {
            total = total
                .add(&module_matrix(&ctx, QGen::e(false, i, i), &w).unwrap())
                .unwrap();
        }
        assert!(total.is_zero());
    }

    #[test]
    fn trivial_module_is_zero() {
        let ctx = QnContext::new(2).unwrap();
        for g in QGen::all(2) {
            let m = module_matrix(&ctx, g, &Word::empty()).unwrap();
            assert_eq!((m.rows(), m.cols()), (1, 1));
            assert!(m.is_zero());
        }
    }
}
