//! Incremental sparse row echelon forms over exact fields.

use std::collections::BTreeMap;

use crate::scalars::GRat;

pub trait Field: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self) -> Self;
}

impl Field for GRat {
    fn zero() -> Self {
        GRat::zero()
    }
    fn one() -> Self {
        GRat::one()
    }
    fn is_zero(&self) -> bool {
        GRat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        GRat::inv(self).expect("pivot is nonzero")
    }
}

/// Integers modulo the prime 998244353, which is 1 mod 4 and so contains a square root of -1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp(pub u64);

pub const FP_MODULUS: u64 = 998_244_353;

impl Fp {
    pub fn new(x: i64) -> Fp {
        Fp(x.rem_euclid(FP_MODULUS as i64) as u64)
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let (mut b, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % FP_MODULUS;
            }
            b = b * b % FP_MODULUS;
            e >>= 1;
        }
        Fp(acc)
    }

    pub fn sqrt_minus_one() -> Fp {
        // 3 generates the multiplicative group
        Fp(3).pow((FP_MODULUS - 1) / 4)
    }

    fn from_big(x: &num_bigint::BigInt) -> Fp {
        use num_traits::ToPrimitive;
        let m = num_bigint::BigInt::from(FP_MODULUS);
        let r = ((x % &m) + &m) % &m;
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    /// Reduction of a Gaussian rational; `None` if a denominator vanishes mod p.
    pub fn from_grat(g: &GRat) -> Option<Fp> {
        let part = |q: &num_rational::BigRational| -> Option<Fp> {
            let d = Fp::from_big(q.denom());
            if d.0 == 0 {
                return None;
            }
            Some(Fp::from_big(q.numer()).mul(&d.inv()))
        };
        let re = part(g.re())?;
        let im = part(g.im())?;
        Some(re.add(&im.mul(&Fp::sqrt_minus_one())))
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % FP_MODULUS)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % FP_MODULUS)
    }
    fn neg(&self) -> Self {
        Fp((FP_MODULUS - self.0) % FP_MODULUS)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverting zero mod p");
        self.pow(FP_MODULUS - 2)
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// Rows kept with distinct leading indices; each stored row is normalised to leading entry 1.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        v.retain(|_, x| !x.is_zero());
        let mut floor = 0usize;
        loop {
            let next = v.range(floor..).next().map(|(k, x)| (*k, x.clone()));
            let Some((lead, coef)) = next else { break };
            match self.rows.get(&lead) {
                Some(row) => {
                    let f = coef.neg();
                    for (k, x) in row {
                        let entry = v.entry(*k).or_insert_with(F::zero);
                        *entry = entry.add(&x.mul(&f));
                        if entry.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => floor = lead + 1,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseRow<F>) -> bool {
        let mut v = self.reduce_leading(v);
        let Some((&lead, x)) = v.iter().next() else {
            return false;
        };
        let s = x.inv();
        for y in v.values_mut() {
            *y = y.mul(&s);
        }
        self.rows.insert(lead, std::mem::take(&mut v));
        true
    }

    /// Only clears leading terms, which is enough to decide independence.
    fn reduce_leading(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        v.retain(|_, x| !x.is_zero());
        loop {
            let Some((lead, coef)) = v.iter().next().map(|(k, x)| (*k, x.clone())) else {
                break;
            };
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let f = coef.neg();
            for (k, x) in row {
                let entry = v.entry(*k).or_insert_with(F::zero);
                *entry = entry.add(&x.mul(&f));
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: SparseRow<F>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank<F: Field>(vectors: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
