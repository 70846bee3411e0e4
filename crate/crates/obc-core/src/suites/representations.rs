//! Checks on the q(n) side: Schur-Weyl ranks and central elements.

use super::Report;
use crate::diagrams::{Expr, Word};
use crate::normalform::{enumerate_keys, realize_expr, DotBounds};
use crate::qrep::{
    central_element_matrix, commutant_dim, matrix_rank, module_matrix, phi_eval, psi_eval, QGen,
    QnContext, QrepError, SuperMatrix,
};
use crate::scalars::GRat;

fn ups(r: usize) -> Word {
    "u".repeat(r).parse().expect("word")
}

/// Rank of the Phi images of the undotted keys of `End(up^r)`, and the number of keys.
pub fn phi_rank(r: usize, n: usize) -> Result<(usize, usize), QrepError> {
    let ctx = QnContext::new(n)?;
    let keys = enumerate_keys(&ups(r), &ups(r), DotBounds::total(0)).expect("bounded");
    let ms = keys
        .iter()
        .map(|k| phi_eval(&ctx, &realize_expr(k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((matrix_rank(&ms), keys.len()))
}

/// Surjectivity at the given `(r, n)`, injectivity where `r <= n`, and the ranks at
/// `r = n + 1` as notes.
pub fn schur_weyl(
    cases: &[(usize, usize)],
    beyond: &[(usize, usize)],
) -> Result<Report, QrepError> {
    let mut rep = Report::new("schur-weyl");
    for &(r, n) in cases {
        let (rank, keys) = phi_rank(r, n)?;
        let comm = commutant_dim(&QnContext::new(n)?, &ups(r))?;
        rep.check(
            format!("Phi onto the commutant, r = {r}, n = {n}"),
            rank == comm,
            format!("rank {rank}, commutant {comm}"),
        );
        if r <= n {
            rep.check(
                format!("Phi injective, r = {r}, n = {n}"),
                rank == keys,
                format!("rank {rank} of {keys} keys"),
            );
        }
    }
    for &(r, n) in beyond {
        let (rank, keys) = phi_rank(r, n)?;
        rep.note(format!("r = {r}, n = {n}: rank {rank} of {keys} keys"));
    }
    Ok(rep)
}

fn central_is_central(ctx: &QnContext, k: u32, a: &Word) -> Result<bool, QrepError> {
    let z = central_element_matrix(ctx, k, a)?;
    for g in QGen::all(ctx.n) {
        if !z.supercommutator(&module_matrix(ctx, g, a)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `z_1, z_3` commute with q(n) on `V` and `V^2`, `z_1 = 2 id` on `V`, and a bubble acts
/// on a module as the matching central element.
pub fn central(ns: &[usize]) -> Result<Report, QrepError> {
    let mut rep = Report::new("central");
    for &n in ns {
        let ctx = QnContext::new(n)?;
        for k in [1u32, 3] {
            for w in ["u", "uu"] {
                let a: Word = w.parse().expect("word");
                rep.check(
                    format!("z_{k} central on V^{w}, n = {n}"),
                    central_is_central(&ctx, k, &a)?,
                    "",
                );
            }
        }
        let u = ups(1);
        let par = crate::qrep::parities(&ctx, 1);
        let z1 = central_element_matrix(&ctx, 1, &u)?;
        rep.check(
            format!("z_1 = 2 id on V, n = {n}"),
            z1 == SuperMatrix::identity(par).scale(&GRat::from_int(2)),
            "",
        );
        for k in [1u32, 3] {
            let bubble = psi_eval(&ctx, &Expr::bubble(k), &u)?;
            let z = central_element_matrix(&ctx, k, &u)?;
            rep.check(
                format!("Delta_{k} acts on V as z_{k}, n = {n}"),
                bubble == z,
                "",
            );
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_keys_are_independent_at_n2() {
        assert_eq!(phi_rank(2, 2).unwrap(), (8, 8));
    }

    #[test]
    fn small_cases() {
        let rep = schur_weyl(&[(1, 1), (2, 2)], &[(2, 1)]).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.notes.len(), 1);
    }

    #[test]
    fn central_up_to_rank_two() {
        let rep = central(&[1, 2]).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
