//! Sergeev, walled Brauer-Clifford and affine Sergeev superalgebras against the
//! diagram categories.

use super::Report;
use crate::algebras::{
    aserg_relations, closure_dim, nu_image, phi_image, sergeev_relations, verify_presentation,
    walled_image, walled_relations, AElem, AGen, ASerg, Perturbation, Serg, WGen,
};
use crate::diagrams::{Expr, Word};
use crate::normalform::{enumerate_keys, normalize, DotBounds};
use crate::qrep::linalg::{rank, SparseRow};
use crate::scalars::GRat;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn gens(r: usize, with_x: bool) -> Vec<AGen> {
    let mut out: Vec<AGen> = (0..r.saturating_sub(1)).map(AGen::S).collect();
    out.extend((0..r).map(AGen::C));
    if with_x {
        out.extend((0..r).map(AGen::X));
    }
    out
}

/// Presentation under the Sergeev map for `r <= max_r`, and dimensions counted three ways
/// for `r <= 4`.
pub fn sergeev(max_r: usize) -> Report {
    let mut rep = Report::new("sergeev");
    for r in 1..=max_r {
        let sub = verify_presentation("sergeev", &Word::ups(r), &sergeev_relations(r), |g| {
            phi_image(r, g).expect("finite generator")
        });
        let failed: Vec<String> = sub.failures().map(|c| c.label.clone()).collect();
        rep.check(
            format!("Sergeev relations hold in End(up^{r})"),
            failed.is_empty(),
            failed.join("; "),
        );
    }
    for r in 1..=4 {
        let want = (1 << r) * factorial(r);
        let keys = enumerate_keys(&Word::ups(r), &Word::ups(r), DotBounds::total(0))
            .map(|k| k.len())
            .unwrap_or(0);
        let alg = Serg::new(r).map(|s| s.dim()).unwrap_or(0);
        rep.check(
            format!("dim Ser_{r} = {want}: algebra basis and undotted keys"),
            keys == want && alg == want,
            format!("keys {keys}, monomials {alg}"),
        );
    }
    for r in 1..=max_r.min(3) {
        let want = (1 << r) * factorial(r);
        let g: Vec<Expr> = gens(r, false)
            .into_iter()
            .filter_map(|g| phi_image(r, g))
            .collect();
        let got = closure_dim(&Word::ups(r), &g);
        rep.check(
            format!("images of the generators span End(up^{r})"),
            got.as_ref().is_ok_and(|&d| d == want),
            format!("{got:?} of {want}"),
        );
    }
    rep
}

fn walled_gens(r: usize, s: usize) -> Vec<WGen> {
    let mut out: Vec<WGen> = (0..r + s - 1)
        .filter(|&i| i + 1 != r)
        .map(WGen::S)
        .collect();
    out.push(WGen::E);
    out.extend((0..r + s).map(WGen::C));
    out
}

/// Walled Brauer-Clifford: the displayed relations hold for the images, the images
/// generate `End(down^s up^r)`, and the dimensions agree, for `r + s <= max_total`.
pub fn walled(max_total: usize) -> Report {
    let mut rep = Report::new("walled");
    for total in 2..=max_total {
        for r in 1..total {
            let s = total - r;
            let w = Word::walled(r, s);
            let sub = verify_presentation("walled", &w, &walled_relations(r, s), |g| {
                walled_image(r, s, g)
            });
            let failed: Vec<String> = sub.failures().map(|c| c.label.clone()).collect();
            rep.check(
                format!("walled relations hold, r = {r}, s = {s}"),
                failed.is_empty(),
                failed.join("; "),
            );
            let want = (1 << total) * factorial(total);
            let keys = enumerate_keys(&w, &w, DotBounds::total(0))
                .map(|k| k.len())
                .unwrap_or(0);
            let g: Vec<Expr> = walled_gens(r, s)
                .into_iter()
                .map(|g| walled_image(r, s, g))
                .collect();
            let span = if total <= 3 {
                closure_dim(&w, &g).ok()
            } else {
                None
            };
            let ok = keys == want && span.is_none_or(|d| d == want);
            rep.check(
                format!("dim BC_({r},{s}) = {want}"),
                ok,
                format!("keys {keys}, span of images {span:?}"),
            );
        }
    }
    for total in 1..=max_total {
        let w = Word::downs(total);
        let want = (1 << total) * factorial(total);
        let keys = enumerate_keys(&w, &w, DotBounds::total(0))
            .map(|k| k.len())
            .unwrap_or(0);
        rep.check(
            format!("dim End(down^{total}) = {want}"),
            keys == want,
            format!("keys {keys}"),
        );
    }
    rep
}

fn alg_side(a: &ASerg, side: &[(GRat, Vec<AGen>)]) -> AElem {
    let mut out = AElem::zero();
    for (c, w) in side {
        out.add_scaled(&a.word(w).expect("valid word"), c);
    }
    out
}

/// Affine Sergeev: the presentation holds in the algebra and in the affine category,
/// perturbed images are caught, and monomials map to independent morphisms.
pub fn affine_sergeev(max_r: usize) -> Report {
    let mut rep = Report::new("affine-sergeev");
    for r in 1..=max_r {
        let rels = aserg_relations(r);
        let a = ASerg::new(r).expect("small r");
        let bad: Vec<String> = rels
            .iter()
            .filter(|rel| alg_side(&a, &rel.lhs) != alg_side(&a, &rel.rhs))
            .map(|rel| rel.label.clone())
            .collect();
        rep.check(
            format!("relations hold in the straightened algebra, r = {r}"),
            bad.is_empty(),
            bad.join("; "),
        );
        let sub = verify_presentation("affine-sergeev", &Word::ups(r), &rels, |g| {
            nu_image(r, g, Perturbation::None)
        });
        let failed: Vec<String> = sub.failures().map(|c| c.label.clone()).collect();
        rep.check(
            format!("relations hold for the images in End(up^{r})"),
            failed.is_empty(),
            failed.join("; "),
        );
    }
    let rels = aserg_relations(2);
    for (p, broken) in [
        (Perturbation::Shift, "c1 x1"),
        (Perturbation::Double, "s1 x1"),
    ] {
        let sub = verify_presentation("control", &Word::ups(2), &rels, |g| nu_image(2, g, p));
        let failed: Vec<String> = sub.failures().map(|c| c.label.clone()).collect();
        rep.check(
            format!("control {p:?} is rejected at {broken}"),
            failed.iter().any(|l| l.starts_with(broken)),
            failed.join("; "),
        );
    }
    // monomials x^a c^b w with a in {0,1}^2
    let a = ASerg::new(2).expect("r = 2");
    let monos = a.truncated_basis(2);
    let mut index = std::collections::HashMap::new();
    let mut rows = Vec::new();
    let mut keys = std::collections::BTreeSet::new();
    for m in &monos {
        let e = crate::algebras::word_expr(&Word::ups(2), &[(GRat::one(), m.to_word())], &|g| {
            nu_image(2, g, Perturbation::None)
        });
        let Ok(nf) = normalize(&e) else { continue };
        let mut row = SparseRow::new();
        for (k, c) in nf.terms() {
            let next = index.len();
            let col = *index.entry(k.clone()).or_insert(next);
            row.insert(col, c.as_constant().unwrap_or_else(GRat::zero));
        }
        if let Some(top) = nf.terms().keys().max_by_key(|k| k.total_dots()) {
            keys.insert(top.clone());
        }
        rows.push(row);
    }
    let rk = rank(rows);
    rep.check(
        "32 monomials of degree at most 1 per strand give independent morphisms with distinct leading keys",
        monos.len() == 32 && rk == 32 && keys.len() == 32,
        format!("{} monomials, rank {rk}, {} leading keys", monos.len(), keys.len()),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rep in [sergeev(2), walled(3), affine_sergeev(2)] {
            assert!(rep.passed(), "{rep}");
        }
    }
}
