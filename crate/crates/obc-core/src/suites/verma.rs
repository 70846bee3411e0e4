//! Top-degree statements about Psi evaluated on the Verma module, and the linear
//! independence of the images of normally ordered morphisms.

use std::collections::HashMap;

use super::Report;
use crate::diagrams::{Expr, Gen, Layer, Word};
use crate::normalform::{enumerate_keys, realize_expr, DotBounds, NormalKey, NormalMorphism, Side};
use crate::qrep::linalg::{rank, SparseRow};
use crate::qrep::{basis_of, TVec};
use crate::scalars::{BubblePoly, GRat, MPoly};
use crate::verma::{h_mono, top_component, Truncation, VBasis, Verma, VermaError};

fn ups(r: usize) -> Word {
    "u".repeat(r).parse().expect("word")
}

/// A black dot on strand `k` of `r` upward strands, strands numbered from the right.
pub fn x_on_strand(r: usize, k: usize) -> Expr {
    Expr::from_layer(Layer::new(ups(r - k), Gen::BlackDot, ups(k - 1)))
}

fn at_hat(m: &Verma, idx: &[u8], h: &[u32], c: GRat) -> TVec<VBasis> {
    let mut b = VBasis::hat(m.n());
    b.h = h_mono(h);
    [((idx.to_vec(), b), c)].into_iter().collect()
}

fn unit(n: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

/// Top-degree statements for one dot, a dot on strand k, bubbles and normally ordered keys, at rank `n` with `r <= n` strands.
pub fn verma_lemmas(n: usize, r: usize, max_degree: u32) -> Result<Report, VermaError> {
    let m = Verma::new(n, Truncation::new(max_degree, 2 * max_degree + 4))?;
    let mut rep = Report::new("verma-lemmas");

    let x = x_on_strand(1, 1);
    let mut ok = true;
    for b in 0..2 * n {
        let i = b % n;
        let sign = if b < n { 1 } else { -1 };
        let top = top_component(&m.psi_m(&x, &m.input(&[b as u8])));
        ok &= top == at_hat(&m, &[b as u8], &unit(n, i, 1), GRat::from_int(sign));
    }
    rep.check(
        "x1: top of x on v_i (x) u^ is v_i (x) u^ h_i, and -v_ibar (x) u^ h_i",
        ok,
        format!("n = {n}"),
    );

    let r = r.min(n);
    let std_idx: Vec<u8> = (0..r).rev().map(|k| k as u8).collect();
    let mut ok = true;
    for k in 1..=r {
        let top = top_component(&m.psi_m(&x_on_strand(r, k), &m.standard_input(r)));
        ok &= top == at_hat(&m, &std_idx, &unit(n, k - 1, 1), GRat::one());
    }
    rep.check(
        "xk: top of x_k on v_r..v_1 (x) u^ is v_r..v_1 (x) u^ h_k",
        ok,
        format!("n = {n}, r = {r}"),
    );

    for k in [1u32, 3] {
        let top = top_component(&m.psi_m(&Expr::bubble(k), &m.input(&[])));
        let mut expect = TVec::new();
        for i in 0..n {
            expect.extend(at_hat(&m, &[], &unit(n, i, k), GRat::from_int(2)));
        }
        rep.check(
            format!("bubbles: top of Delta_{k} on u^ is 2 u^ (h_1^{k} + ... + h_n^{k})"),
            top == expect,
            "",
        );
    }

    let keys = enumerate_keys(&ups(r), &ups(r), DotBounds::total(2)).expect("bounded");
    let mut bad = 0;
    for key in &keys {
        if top_lemma_holds(&m, key, r) {
            continue;
        }
        bad += 1;
    }
    rep.check(
        "top component lemma for normally ordered keys with at most 2 dots",
        bad == 0,
        format!("{} keys, {bad} failures", keys.len()),
    );
    rep.check(
        "no truncation inside the certified degrees",
        !m.truncation_hit(),
        format!("D = {max_degree}"),
    );
    Ok(rep)
}

fn top_lemma_holds(m: &Verma, key: &NormalKey, r: usize) -> bool {
    let input = m.standard_input(r);
    let top = top_component(&m.psi_m(&realize_expr(key), &input));
    let mut exps = vec![0u32; m.n()];
    for s in key.strands() {
        // dots sit at the start of each strand; an upward strand starts at the bottom
        if s.start.side == Side::Bottom {
            exps[r - 1 - s.start.pos] += s.dots;
        }
    }
    let h = h_mono(&exps);
    let expect: TVec<VBasis> = m
        .psi_m(&realize_expr(&key.undotted()), &input)
        .into_iter()
        .map(|((w, mut b), c)| {
            b.h = h.clone();
            ((w, b), c)
        })
        .collect();
    top == expect
}

/// Images of `key (x) bubble monomial` on every `v_a (x) u^`, flattened.
fn image_row(
    m: &Verma,
    e: &Expr,
    r: usize,
    index: &mut HashMap<(usize, Vec<u8>, VBasis), usize>,
) -> SparseRow<GRat> {
    let mut row = SparseRow::new();
    for (a, idx) in basis_of(&m.ctx, r).iter().enumerate() {
        for ((w, b), c) in m.psi_m(e, &m.input(idx)) {
            let next = index.len();
            let col = *index.entry((a, w, b)).or_insert(next);
            row.insert(col, c);
        }
    }
    row
}

/// Rank of the Psi_M images of all keys of `End(up^r)` with at most `dots` black dots
/// times bubble monomials of weight at most `weight`, against their number.
pub fn independence(
    n: usize,
    r: usize,
    dots: u32,
    weight: u32,
    max_degree: u32,
) -> Result<(usize, usize, bool), VermaError> {
    independence_where(n, r, dots, max_degree, |_| weight)
}

/// As `independence`, over the filtered piece: key dots plus bubble weight at most `k`.
pub fn filtered_independence(
    n: usize,
    r: usize,
    k: u32,
    max_degree: u32,
) -> Result<(usize, usize, bool), VermaError> {
    independence_where(n, r, k, max_degree, |key| k - key.total_dots())
}

fn independence_where(
    n: usize,
    r: usize,
    dots: u32,
    max_degree: u32,
    weight: impl Fn(&NormalKey) -> u32,
) -> Result<(usize, usize, bool), VermaError> {
    let m = Verma::new(n, Truncation::new(max_degree, 2 * max_degree + 4))?;
    let w = ups(r);
    let keys = enumerate_keys(&w, &w, DotBounds::total(dots)).expect("bounded");
    let mut index = HashMap::new();
    let mut rows = Vec::new();
    for key in &keys {
        for mono in BubblePoly::monomials_up_to(weight(key)) {
            let bp = BubblePoly::from_mpoly(MPoly::monomial(mono, GRat::one()));
            let e = NormalMorphism::single(key.clone(), bp).to_expr();
            rows.push(image_row(&m, &e, r, &mut index));
        }
    }
    let count = rows.len();
    Ok((rank(rows), count, m.truncation_hit()))
}

/// The suite run by `verify --suite verma-lemmas`.
pub fn verma_suite(n: usize, r: usize) -> Result<Report, VermaError> {
    let mut rep = verma_lemmas(n, r, 5)?;
    for rr in 0..=r.min(2) {
        let (rk, count, hit) = independence(n, rr, 2, 2, 4)?;
        rep.check(
            format!("independence of Psi_M images, r = {rr}"),
            rk == count && !hit,
            format!("rank {rk} of {count}"),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strand_numbering() {
        let e = x_on_strand(3, 1);
        let l = &e.terms().keys().next().unwrap()[0];
        assert_eq!(l.offset(), 2);
    }
}
