use std::collections::BTreeMap;

use serde_json::json;

use super::linalg::{rank, SparseRow};
use super::QrepError;
use crate::diagrams::Parity;
use crate::scalars::GRat;

/// Exact matrix between parity-graded spaces; stored by columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperMatrix {
    row_par: Vec<bool>,
    col_par: Vec<bool>,
    cols: Vec<BTreeMap<usize, GRat>>,
}

impl SuperMatrix {
    pub fn zero(row_par: Vec<bool>, col_par: Vec<bool>) -> SuperMatrix {
        let cols = vec![BTreeMap::new(); col_par.len()];
        SuperMatrix {
            row_par,
            col_par,
            cols,
        }
    }

    pub fn identity(par: Vec<bool>) -> SuperMatrix {
        let mut m = SuperMatrix::zero(par.clone(), par);
        for k in 0..m.cols.len() {
            m.cols[k].insert(k, GRat::one());
        }
        m
    }

    pub fn from_columns(
        row_par: Vec<bool>,
        col_par: Vec<bool>,
        cols: Vec<BTreeMap<usize, GRat>>,
    ) -> SuperMatrix {
        assert_eq!(cols.len(), col_par.len());
        let cols = cols.into_iter().map(|mut c| {
            c.retain(|_, v| !v.is_zero());
            c
        });
        SuperMatrix {
            row_par,
            col_par,
            cols: cols.collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.row_par.len()
    }

    pub fn cols(&self) -> usize {
        self.col_par.len()
    }

    pub fn row_parity(&self) -> &[bool] {
        &self.row_par
    }

    pub fn col_parity(&self) -> &[bool] {
        &self.col_par
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, GRat> {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> GRat {
        self.cols[c].get(&r).cloned().unwrap_or_else(GRat::zero)
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: &GRat) {
        let e = self.cols[c].entry(r).or_insert_with(GRat::zero);
        *e += v;
        if e.is_zero() {
            self.cols[c].remove(&r);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GRat)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `None` when the matrix mixes parities; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for (r, c, _) in self.entries() {
            let p = self.row_par[r] ^ self.col_par[c];
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(Parity::from_bit(seen.unwrap_or(false)))
    }

    fn same_shape(&self, o: &SuperMatrix, op: &'static str) -> Result<(), QrepError> {
        if self.row_par != o.row_par || self.col_par != o.col_par {
            return Err(QrepError::DimensionMismatch {
                op,
                left: (self.rows(), self.cols()),
                right: (o.rows(), o.cols()),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &SuperMatrix) -> Result<SuperMatrix, QrepError> {
        self.same_shape(o, "add")?;
        let mut out = self.clone();
        for (r, c, v) in o.entries() {
            out.add_entry(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &SuperMatrix) -> Result<SuperMatrix, QrepError> {
        self.add(&o.scale(&GRat::from_int(-1)))
    }

    pub fn scale(&self, s: &GRat) -> SuperMatrix {
        let mut out = SuperMatrix::zero(self.row_par.clone(), self.col_par.clone());
        if s.is_zero() {
            return out;
        }
        for (c, col) in self.cols.iter().enumerate() {
            out.cols[c] = col.iter().map(|(r, v)| (*r, v * s)).collect();
        }
        out
    }

    /// Matrix product `self * o` (apply `o` first).
    pub fn mul(&self, o: &SuperMatrix) -> Result<SuperMatrix, QrepError> {
        if self.col_par != o.row_par {
            return Err(QrepError::DimensionMismatch {
                op: "mul",
                left: (self.rows(), self.cols()),
                right: (o.rows(), o.cols()),
            });
        }
        let mut out = SuperMatrix::zero(self.row_par.clone(), o.col_par.clone());
        for (c, col) in o.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, GRat> = BTreeMap::new();
            for (k, v) in col {
                for (r, w) in &self.cols[*k] {
                    *acc.entry(*r).or_insert_with(GRat::zero) += &(w * v);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.cols[c] = acc;
        }
        Ok(out)
    }

    /// Graded commutator `ab - (-1)^{p(a)p(b)} ba` of homogeneous endomorphisms.
    pub fn supercommutator(&self, o: &SuperMatrix) -> Result<SuperMatrix, QrepError> {
        let pa = self.parity().ok_or(QrepError::Inhomogeneous)?;
        let pb = o.parity().ok_or(QrepError::Inhomogeneous)?;
        let ab = self.mul(o)?;
        let ba = o.mul(self)?;
        if pa.is_odd() && pb.is_odd() {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// `a (x) b` with the Koszul sign `(-1)^{p(b)p(v)}` on `v (x) w`; `b` must be homogeneous.
    /// Basis order: the left factor is most significant.
    pub fn tensor(&self, b: &SuperMatrix) -> Result<SuperMatrix, QrepError> {
        let pb = b.parity().ok_or(QrepError::Inhomogeneous)?.is_odd();
        let combine = |x: &[bool], y: &[bool]| -> Vec<bool> {
            x.iter()
                .flat_map(|p| y.iter().map(move |q| p ^ q))
                .collect()
        };
        let row_par = combine(&self.row_par, &b.row_par);
        let col_par = combine(&self.col_par, &b.col_par);
        let mut out = SuperMatrix::zero(row_par, col_par);
        let (br, bc) = (b.rows(), b.cols());
        for (ca, cola) in self.cols.iter().enumerate() {
            let sign = if pb && self.col_par[ca] {
                GRat::from_int(-1)
            } else {
                GRat::one()
            };
            for (cb, colb) in b.cols.iter().enumerate() {
                let c = ca * bc + cb;
                for (ra, va) in cola {
                    let sv = va * &sign;
                    for (rb, vb) in colb {
                        out.cols[c].insert(ra * br + rb, &sv * vb);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entries as one sparse vector, for rank computations over sets of matrices.
    pub fn flatten(&self) -> SparseRow<GRat> {
        let rows = self.rows();
        self.entries()
            .map(|(r, c, v)| (c * rows + r, v.clone()))
            .collect()
    }

    /// `row col re im` per nonzero entry.
    pub fn to_coords(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.entries() {
            out.push_str(&format!("{} {} {} {}\n", r, c, v.re(), v.im()));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let bits = |v: &[bool]| v.iter().map(|b| u8::from(*b)).collect::<Vec<_>>();
        let entries: Vec<_> = self
            .entries()
            .map(|(r, c, v)| json!([r, c, v.re().to_string(), v.im().to_string()]))
            .collect();
        json!({
            "row_parity": bits(&self.row_par),
            "col_parity": bits(&self.col_par),
            "entries": entries,
        })
    }
}

pub fn matrix_rank(ms: &[SuperMatrix]) -> usize {
    rank(ms.iter().map(|m| m.flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd_swap() -> SuperMatrix {
        let mut m = SuperMatrix::zero(vec![false, true], vec![false, true]);
        m.add_entry(1, 0, &GRat::one());
        m.add_entry(0, 1, &GRat::one());
        m
    }

    #[test]
    fn odd_tensor_odd_picks_up_sign() {
        let a = odd_swap();
        let ab = a.tensor(&a).unwrap();
        // (a(x)a)(v1 (x) v0) = -(a v1 (x) a v0)
        assert_eq!(ab.get(0, 3), GRat::from_int(-1));
        assert_eq!(ab.get(3, 0), GRat::one());
        assert_eq!(ab.parity(), Some(Parity::Even));
    }

    #[test]
    fn interchange_law() {
        let a = odd_swap();
        let id = SuperMatrix::identity(vec![false, true]);
        let lhs = a.tensor(&id).unwrap().mul(&id.tensor(&a).unwrap()).unwrap();
        let rhs = a.tensor(&a).unwrap();
        assert_eq!(lhs, rhs);
        let other = id.tensor(&a).unwrap().mul(&a.tensor(&id).unwrap()).unwrap();
        assert_eq!(other, rhs.scale(&GRat::from_int(-1)));
    }

    #[test]
    fn supercommutator_of_odd_square() {
        let a = odd_swap();
        let id = SuperMatrix::identity(vec![false, true]);
        assert_eq!(a.supercommutator(&a).unwrap(), id.scale(&GRat::from_int(2)));
    }
}
