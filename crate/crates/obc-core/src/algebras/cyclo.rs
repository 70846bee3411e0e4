//! Cyclotomic quotients of the affine Sergeev superalgebra by the two-sided ideal
//! generated by `f(x_1)`, multiplied by rewriting.

use std::cell::RefCell;
use std::collections::HashMap;

use super::{structure_constants, AElem, AGen, AMono, ASerg, AlgebraError};
use crate::qrep::linalg::{Echelon, SparseRow};
use crate::scalars::GRat;

#[derive(Debug)]
pub struct CycloSerg {
    pub alg: ASerg,
    /// Monic `f`, lowest coefficient first, leading 1 included.
    f: Vec<GRat>,
    /// `x_p^l - g_p` where `g_p = s_{p-1} g_{p-1} s_{p-1}` and `g_0 = f(x_1)`.
    lower: Vec<AElem>,
    memo: RefCell<HashMap<Vec<u32>, AElem>>,
}

impl CycloSerg {
    pub fn new(r: usize, f: Vec<GRat>) -> Result<CycloSerg, AlgebraError> {
        let alg = ASerg::new(r)?;
        if f.len() < 2 || !f.last().is_some_and(GRat::is_one) {
            return Err(AlgebraError::NotMonic);
        }
        let l = (f.len() - 1) as u32;
        let mut g = AElem::zero();
        for (k, c) in f.iter().enumerate() {
            let mut m = AMono::one(r);
            if r > 0 {
                m.a[0] = k as u32;
            }
            g.add_term(m, c.clone());
        }
        let mut lower = Vec::new();
        for p in 0..r {
            if p > 0 {
                let s = alg.gen(AGen::S(p - 1))?;
                g = alg.mul(&alg.mul(&s, &g), &s);
            }
            let mut lead = AMono::one(r);
            lead.a[p] = l;
            lower.push(AElem::mono(lead).sub(&g));
        }
        Ok(CycloSerg {
            alg,
            f,
            lower,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn level(&self) -> u32 {
        (self.f.len() - 1) as u32
    }

    pub fn f(&self) -> &[GRat] {
        &self.f
    }

    pub fn basis(&self) -> Vec<AMono> {
        self.alg.truncated_basis(self.level())
    }

    /// Expected dimension `l^r 2^r r!`.
    pub fn expected_dim(&self) -> usize {
        let r = self.alg.r;
        (self.level() as usize).pow(r as u32) * (1 << r) * (1..=r).product::<usize>()
    }

    fn reduce_x(&self, a: &[u32]) -> AElem {
        if let Some(hit) = self.memo.borrow().get(a) {
            return hit.clone();
        }
        let l = self.level();
        let r = self.alg.r;
        let out = match a.iter().position(|&e| e >= l) {
            None => AElem::mono(AMono {
                a: a.to_vec(),
                ..AMono::one(r)
            }),
            Some(p) => {
                // x^a = x^(a - l e_p) x_p^l and x_p^l = (x_p^l - g_p) mod the ideal
                let mut rest = AMono::one(r);
                rest.a = a.to_vec();
                rest.a[p] -= l;
                let prod = self.alg.mul(&AElem::mono(rest), &self.lower[p]);
                self.reduce(&prod)
            }
        };
        self.memo.borrow_mut().insert(a.to_vec(), out.clone());
        out
    }

    /// The image in the quotient, written in the basis with all exponents `< l`.
    pub fn reduce(&self, e: &AElem) -> AElem {
        let mut out = AElem::zero();
        for (m, c) in e.terms() {
            let mut cur = self.reduce_x(&m.a);
            let mut tail = AMono::one(self.alg.r);
            tail.b = m.b;
            tail.w = m.w.clone();
            for g in tail.to_word() {
                cur = self.alg.rmul(&cur, g);
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    pub fn mul(&self, x: &AElem, y: &AElem) -> AElem {
        self.reduce(&self.alg.mul(x, y))
    }

    pub fn gens(&self) -> Vec<AGen> {
        let r = self.alg.r;
        let mut out: Vec<AGen> = (0..r.saturating_sub(1)).map(AGen::S).collect();
        out.extend((0..r).map(AGen::C));
        out.extend((0..r).map(AGen::X));
        out
    }

    /// Dimension of the span reached from `1` by right multiplication with generators.
    pub fn closure_dim(&self) -> usize {
        let mut index: HashMap<AMono, usize> = HashMap::new();
        let mut ech: Echelon<GRat> = Echelon::new();
        let mut queue = vec![self.alg.one()];
        let row = |e: &AElem, index: &mut HashMap<AMono, usize>| -> SparseRow<GRat> {
            e.terms()
                .iter()
                .map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        };
        let first = row(&queue[0], &mut index);
        ech.insert(first);
        while let Some(e) = queue.pop() {
            for g in self.gens() {
                let next = self.reduce(&self.alg.rmul(&e, g));
                let v = row(&next, &mut index);
                if ech.insert(v) {
                    queue.push(next);
                }
            }
        }
        ech.rank()
    }

    pub fn structure_constants(&self) -> serde_json::Value {
        structure_constants(&self.basis(), |a, b| {
            self.mul(&AElem::mono(a.clone()), &AElem::mono(b.clone()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(cs: &[i64]) -> Vec<GRat> {
        cs.iter().map(|&c| GRat::from_int(c)).collect()
    }

    #[test]
    fn rejects_non_monic() {
        assert!(CycloSerg::new(2, poly(&[1, 2])).is_err());
        assert!(CycloSerg::new(2, poly(&[1])).is_err());
    }

    #[test]
    fn level_one_kills_x1() {
        let q = CycloSerg::new(2, poly(&[0, 1])).unwrap();
        let x1 = q.alg.gen(AGen::X(0)).unwrap();
        assert!(q.reduce(&x1).is_zero());
    }

    #[test]
    fn dimensions() {
        for (r, f) in [
            (1, vec![0, 1]),
            (1, vec![0, 0, 1]),
            (2, vec![-1, 0, 1]),
            (2, vec![0, 2, 0, 1]),
        ] {
            let q = CycloSerg::new(r, poly(&f)).unwrap();
            assert_eq!(q.closure_dim(), q.expected_dim(), "r = {r}, f = {f:?}");
        }
    }

    fn random_elem(q: &CycloSerg, rng: &mut ChaCha8Rng) -> AElem {
        let gens = q.gens();
        let mut out = AElem::zero();
        for _ in 0..2 {
            let len = rng.random_range(0..6);
            let word: Vec<AGen> = (0..len)
                .map(|_| gens[rng.random_range(0..gens.len())])
                .collect();
            out.add_scaled(
                &q.alg.word(&word).unwrap(),
                &GRat::from_int(rng.random_range(-2..3)),
            );
        }
        out
    }

    #[test]
    fn reduction_is_a_ring_map_on_samples() {
        let q = CycloSerg::new(2, poly(&[0, -1, 0, 1])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let (a, b) = (random_elem(&q, &mut rng), random_elem(&q, &mut rng));
            assert_eq!(
                q.reduce(&q.alg.mul(&a, &b)),
                q.mul(&q.reduce(&a), &q.reduce(&b))
            );
        }
    }
}
