//! The superbracket on q(n), computed from 2n x 2n matrices.

use std::collections::HashMap;

use crate::qrep::{module_matrix, QGen, QnContext, QrepError, SuperMatrix};
use crate::scalars::GRat;

/// A linear combination of `e^eps_{i,j}`.
pub type GenCombo = Vec<(QGen, GRat)>;

fn matrix_of(ctx: &QnContext, g: QGen) -> Result<SuperMatrix, QrepError> {
    module_matrix(ctx, g, &"u".parse().expect("word"))
}

/// Reads off the coordinates of a q(n) matrix in the `e^eps_{i,j}` basis.
/// Returns `None` if the matrix is not in q(n).
pub fn decompose(ctx: &QnContext, m: &SuperMatrix) -> Result<Option<GenCombo>, QrepError> {
    let n = ctx.n;
    let mut out = Vec::new();
    let mut rebuilt = SuperMatrix::zero(m.row_parity().to_vec(), m.col_parity().to_vec());
    for odd in [false, true] {
        for i in 0..n {
            for j in 0..n {
                let c = m.get(if odd { i + n } else { i }, j);
                if c.is_zero() {
                    continue;
                }
                let g = QGen::e(odd, i, j);
                rebuilt = rebuilt.add(&matrix_of(ctx, g)?.scale(&c))?;
                out.push((g, c));
            }
        }
    }
    Ok((rebuilt == *m).then_some(out))
}

/// `[g1, g2] = g1 g2 - (-1)^{p1 p2} g2 g1`, expressed in the generator basis.
pub fn superbracket(ctx: &QnContext, g1: QGen, g2: QGen) -> Result<GenCombo, QrepError> {
    let m = matrix_of(ctx, g1)?.supercommutator(&matrix_of(ctx, g2)?)?;
    Ok(decompose(ctx, &m)?.expect("q(n) is closed under the superbracket"))
}

/// All brackets of pairs of generators, for the straightening loop.
#[derive(Clone, Debug)]
pub struct BracketTable {
    table: HashMap<(QGen, QGen), GenCombo>,
}

impl BracketTable {
    pub fn new(ctx: &QnContext) -> Result<BracketTable, QrepError> {
        let gens = QGen::all(ctx.n);
        let mut table = HashMap::new();
        for &a in &gens {
            for &b in &gens {
                table.insert((a, b), superbracket(ctx, a, b)?);
            }
        }
        Ok(BracketTable { table })
    }

    pub fn get(&self, a: QGen, b: QGen) -> &GenCombo {
        &self.table[&(a, b)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> QnContext {
        QnContext::new(n).unwrap()
    }

    #[test]
    fn cartan_commutes() {
        let c = ctx(3);
        for i in 0..3 {
            for j in 0..3 {
                assert!(superbracket(&c, QGen::e(false, i, i), QGen::e(false, j, j))
                    .unwrap()
                    .is_empty());
            }
        }
    }

    #[test]
    fn odd_self_bracket() {
        let b = superbracket(&ctx(1), QGen::e(true, 0, 0), QGen::e(true, 0, 0)).unwrap();
        assert_eq!(b, vec![(QGen::e(false, 0, 0), GRat::from_int(2))]);
    }

    #[test]
    fn closed_for_n2() {
        let c = ctx(2);
        for a in QGen::all(2) {
            for b in QGen::all(2) {
                let m = matrix_of(&c, a)
                    .unwrap()
                    .supercommutator(&matrix_of(&c, b).unwrap())
                    .unwrap();
                assert!(decompose(&c, &m).unwrap().is_some(), "{a:?} {b:?}");
            }
        }
    }

    // e^a_{ij} e^b_{kl} = (-1)^{ab} e^b_{kl} e^a_{ij} + d_{jk} e^{a+b}_{il} - (-1)^{ab} d_{il} e^{a+b}_{kj}
    #[test]
    fn matches_closed_formula() {
        let c = ctx(3);
        let table = BracketTable::new(&c).unwrap();
        for a in QGen::all(3) {
            for b in QGen::all(3) {
                let odd = a.odd ^ b.odd;
                let both = a.odd && b.odd;
                let mut expect: std::collections::BTreeMap<QGen, i64> = Default::default();
                if a.j == b.i {
                    *expect.entry(QGen::e(odd, a.i, b.j)).or_default() += 1;
                }
                if a.i == b.j {
                    *expect.entry(QGen::e(odd, b.i, a.j)).or_default() += if both { 1 } else { -1 };
                }
                expect.retain(|_, v| *v != 0);
                let got: std::collections::BTreeMap<QGen, i64> = table
                    .get(a, b)
                    .iter()
                    .map(|(g, x)| (*g, x.re().to_integer().try_into().unwrap()))
                    .collect();
                assert_eq!(got, expect, "{a:?} {b:?}");
            }
        }
    }
}
