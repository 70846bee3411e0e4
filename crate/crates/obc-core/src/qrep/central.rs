//! Central elements z_k and supercommutants of tensor modules.

use std::collections::{BTreeMap, HashMap};

use super::linalg::{Echelon, Field, SparseRow};
use super::matrix::SuperMatrix;
use super::tensor::{basis_of, module_matrix, parities, parity_of, QGen};
use super::{QnContext, QrepError};
use crate::diagrams::{Dir, Word};
use crate::exec::Exec;
use crate::scalars::GRat;

/// `sgn(eps_k, ..., eps_1)`, with `eps[0] = eps_k`.
pub fn sgn(eps: &[bool]) -> i64 {
    if eps.len() <= 1 {
        return 1;
    }
    let rest = &eps[1..];
    let p = rest.iter().filter(|b| **b).count() % 2 == 1;
    let s = if !eps[0] && p { -1 } else { 1 };
    s * sgn(rest)
}

/// The closed form of `sgn`: exponent `eps_{k-1} + eps_{k-3} + ... + sum_{r<s} eps_r eps_s`.
pub fn sgn_closed(eps: &[bool]) -> i64 {
    let k = eps.len();
    // eps_t lives at eps[k - t]
    let at = |t: usize| eps[k - t] as usize;
    let mut e = 0usize;
    let mut t = k.saturating_sub(1);
    let stop = if k.is_multiple_of(2) { 1 } else { 2 };
    while t >= stop && t >= 1 {
        e += at(t);
        if t < 2 {
            break;
        }
        t -= 2;
    }
    let ones = eps.iter().filter(|b| **b).count();
    e += ones * ones.saturating_sub(1) / 2;
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Matrix of the central element `z_k` on `V^a` (k odd).
pub fn central_element_matrix(ctx: &QnContext, k: u32, a: &Word) -> Result<SuperMatrix, QrepError> {
    if k.is_multiple_of(2) || k == 0 {
        return Err(QrepError::EvenCentral(k));
    }
    let k = k as usize;
    let n = ctx.n;
    let par = parities(ctx, a.len());
    let mut gens: HashMap<QGen, SuperMatrix> = HashMap::new();
    for g in QGen::all(n) {
        gens.insert(g, module_matrix(ctx, g, a)?);
    }
    let mut total = SuperMatrix::zero(par.clone(), par.clone());
    let tuples = n.pow(k as u32);
    for mask in 0u32..(1 << k) {
        // eps[0] = eps_k, ..., eps[k-1] = eps_1
        let eps: Vec<bool> = (0..k).map(|t| mask >> t & 1 == 1).collect();
        if eps.iter().filter(|b| **b).count() % 2 == 1 {
            continue;
        }
        let s = sgn(&eps);
        for mut code in 0..tuples {
            // idx[t] = i_{t+1}
            let mut idx = vec![0usize; k];
            for slot in idx.iter_mut() {
                *slot = code % n;
                code /= n;
            }
            // rightmost factor e^{eps_1}_{i_k, i_1}, then e^{eps_t}_{i_{t-1}, i_t} for t = 2..k
            let mut prod = gens[&QGen::e(eps[k - 1], idx[k - 1], idx[0])].clone();
            for t in 2..=k {
                let g = QGen::e(eps[k - t], idx[t - 2], idx[t - 1]);
                prod = gens[&g].mul(&prod)?;
            }
            total = total.add(&prod.scale(&GRat::from_int(2 * s)))?;
        }
    }
    Ok(total)
}

/// Weight of a basis tensor: `+e_i` for each `v_i` or `v_ibar`, `-e_i` for each dual.
fn weight(ctx: &QnContext, dirs: &[Dir], idx: &[u8]) -> Vec<i32> {
    let mut w = vec![0i32; ctx.n];
    for (d, b) in dirs.iter().zip(idx) {
        let i = *b as usize % ctx.n;
        w[i] += if *d == Dir::Up { 1 } else { -1 };
    }
    w
}

/// A generating set of q(n) modulo the Cartan subalgebra `e^0_{ii}`, which the weight
/// decomposition already accounts for.
pub fn commutant_generators(n: usize) -> Vec<QGen> {
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        out.push(QGen::e(false, i, i + 1));
        out.push(QGen::e(false, i + 1, i));
    }
    for i in 0..n {
        out.push(QGen::e(true, i, i));
    }
    out
}

/// Dimension of the supercommutant of the q(n)-action on `V^a`.
pub fn commutant_dim(ctx: &QnContext, a: &Word) -> Result<usize, QrepError> {
    commutant_dim_with(ctx, a, Exec::default())
}

pub fn commutant_dim_with(ctx: &QnContext, a: &Word, exec: Exec) -> Result<usize, QrepError> {
    commutant_dim_over::<GRat>(ctx, a, &commutant_generators(ctx.n), |x| x.clone(), exec)
}

/// Same computation mod a large prime: an upper bound for the exact value.
pub fn commutant_dim_mod_p(ctx: &QnContext, a: &Word) -> Result<usize, QrepError> {
    use super::linalg::Fp;
    commutant_dim_over::<Fp>(
        ctx,
        a,
        &commutant_generators(ctx.n),
        |x| Fp::from_grat(x).expect("integral entries"),
        Exec::default(),
    )
}

pub fn commutant_dim_over<F: Field>(
    ctx: &QnContext,
    a: &Word,
    gens: &[QGen],
    conv: impl Fn(&GRat) -> F + Sync,
    exec: Exec,
) -> Result<usize, QrepError> {
    let dim = ctx.dim_v().pow(a.len() as u32);
    if dim > ctx.dim_cap {
        return Err(QrepError::SizeCap {
            dim,
            cap: ctx.dim_cap,
        });
    }
    let basis = basis_of(ctx, a.len());
    let par: Vec<bool> = basis
        .iter()
        .map(|v| v.iter().fold(false, |p, b| p ^ parity_of(ctx, *b)))
        .collect();
    let mut blocks: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    for (k, v) in basis.iter().enumerate() {
        blocks
            .entry(weight(ctx, a.letters(), v))
            .or_default()
            .push(k);
    }
    let block_of: Vec<&Vec<usize>> = basis
        .iter()
        .map(|v| &blocks[&weight(ctx, a.letters(), v)])
        .collect();
    let mats: Vec<(bool, SuperMatrix)> = gens
        .iter()
        .map(|g| Ok((g.odd, module_matrix(ctx, *g, a)?)))
        .collect::<Result<_, QrepError>>()?;
    // even and odd unknowns never meet in one equation
    let nullity = |odd_m: &bool| -> usize {
        let odd_m = *odd_m;
        let mut vars: HashMap<(usize, usize), usize> = HashMap::new();
        for cols in blocks.values() {
            for &r in cols {
                for &c in cols {
                    if par[r] ^ par[c] == odd_m {
                        let id = vars.len();
                        vars.insert((r, c), id);
                    }
                }
            }
        }
        let mut ech: Echelon<F> = Echelon::new();
        for (odd_x, x) in &mats {
            let s: i64 = if odd_m && *odd_x { -1 } else { 1 };
            let mut eqs: BTreeMap<(usize, usize), SparseRow<F>> = BTreeMap::new();
            let mut add = |eq: (usize, usize), var: usize, val: F| {
                let row = eqs.entry(eq).or_default();
                let e = row.entry(var).or_insert_with(F::zero);
                *e = e.add(&val);
            };
            for c in 0..dim {
                // (M X)[r][c] = sum_k M[r][k] X[k][c]
                for (k, xv) in x.column(c) {
                    let xv = conv(xv);
                    for &r in block_of[*k] {
                        if let Some(&var) = vars.get(&(r, *k)) {
                            add((r, c), var, xv.clone());
                        }
                    }
                }
                // - s (X M)[r][c] = - s sum_k X[r][k] M[k][c]
                for &k in block_of[c] {
                    let Some(&var) = vars.get(&(k, c)) else {
                        continue;
                    };
                    for (r, xv) in x.column(k) {
                        let v = conv(xv);
                        add((*r, c), var, if s == 1 { v.neg() } else { v });
                    }
                }
            }
            for (_, row) in eqs {
                ech.insert(row);
            }
        }
        vars.len() - ech.rank()
    };
    Ok(exec.map(&[false, true], nullity).into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrep::linalg::Fp;

    fn ctx(n: usize) -> QnContext {
        QnContext::new(n).unwrap()
    }

    #[test]
    fn sgn_examples() {
        assert_eq!(sgn(&[true, true]), 1);
        assert_eq!(sgn(&[true]), 1);
    }

    #[test]
    fn sgn_closed_form_matches_recursion() {
        for k in 1..=7usize {
            for mask in 0u32..(1 << k) {
                let eps: Vec<bool> = (0..k).map(|t| mask >> t & 1 == 1).collect();
                assert_eq!(sgn(&eps), sgn_closed(&eps), "{eps:?}");
            }
        }
    }

    #[test]
    fn z1_is_twice_identity_on_v() {
        for n in 1..=3 {
            let z = central_element_matrix(&ctx(n), 1, &"u".parse().unwrap()).unwrap();
            let par = parities(&ctx(n), 1);
            assert_eq!(z, SuperMatrix::identity(par).scale(&GRat::from_int(2)));
        }
    }

    #[test]
    fn z3_is_central() {
        let c = ctx(2);
        for w in ["u", "uu", "ud"] {
            let a: Word = w.parse().unwrap();
            let z = central_element_matrix(&c, 3, &a).unwrap();
            for g in QGen::all(2) {
                let m = module_matrix(&c, g, &a).unwrap();
                assert!(z.supercommutator(&m).unwrap().is_zero(), "{w} {g:?}");
            }
        }
    }

    #[test]
    fn even_k_rejected() {
        assert!(matches!(
            central_element_matrix(&ctx(1), 2, &Word::empty()),
            Err(QrepError::EvenCentral(2))
        ));
    }

    #[test]
    fn commutant_small_cases() {
        assert_eq!(commutant_dim(&ctx(1), &"u".parse().unwrap()).unwrap(), 2);
        assert_eq!(commutant_dim(&ctx(2), &"uu".parse().unwrap()).unwrap(), 8);
    }

    #[test]
    fn reduced_generating_set_suffices() {
        let c = ctx(2);
        for w in ["uu", "ud", "du"] {
            let a: Word = w.parse().unwrap();
            let small = commutant_dim(&c, &a).unwrap();
            let full =
                commutant_dim_over::<GRat>(&c, &a, &QGen::all(2), |x| x.clone(), Exec::Sequential)
                    .unwrap();
            assert_eq!(small, full, "{w}");
            let modp = commutant_dim_over::<Fp>(
                &c,
                &a,
                &QGen::all(2),
                |x| Fp::from_grat(x).unwrap(),
                Exec::Parallel,
            )
            .unwrap();
            assert_eq!(small, modp);
        }
    }
}
