//! Cyclotomic quotients: dimensions three ways, the two generating sets, the two reduction
//! routes and the isomorphism from the cyclotomic Sergeev superalgebra.

use super::random::{random_expr_between, rng, StackShape};
use super::Report;
use crate::algebras::{nu_image, word_expr, AElem, CycloSerg, Perturbation};
use crate::cyclotomic::{
    cyclo_dim, gamma_reduce, obcf_bridge, set_equivalence, CycloData, CycloReducer, GenSet,
};
use crate::diagrams::Word;
use crate::normalform::NormalKey;
use crate::qrep::linalg::{rank, SparseRow};
use crate::scalars::GRat;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `f = t^l - t^(l-2)` style samples with integer coefficients, one per level.
pub fn sample_f(l: u32) -> Vec<GRat> {
    let mut f = vec![GRat::zero(); l as usize + 1];
    f[l as usize] = GRat::one();
    if l >= 2 {
        f[l as usize - 2] = GRat::from_int(-2);
    }
    f
}

pub const DIM_CASES: &[(usize, u32)] = &[(1, 1), (1, 2), (2, 2), (2, 3)];

/// `dim Serg_n^f` against the key count and the closure dimension.
pub fn dimensions(cases: &[(usize, u32)]) -> Report {
    let mut rep = Report::new("cyclo-dimensions");
    for &(n, l) in cases {
        let want = (l as usize).pow(n as u32) * (1 << n) * factorial(n);
        let f = sample_f(l);
        let data = CycloData::from_f(&f, None).expect("sample f");
        let keys = cyclo_dim(&Word::ups(n), &Word::ups(n), &data, None).unwrap_or(0);
        let closure = CycloSerg::new(n, f).map(|q| q.closure_dim()).unwrap_or(0);
        rep.check(
            format!("n = {n}, l = {l}: {want}"),
            keys == want && closure == want,
            format!("keys {keys}, closure {closure}"),
        );
    }
    rep
}

/// Images of the basis monomials of `Serg_n^f` are the basis keys, up to lower terms.
pub fn gamma_bijective(n: usize, l: u32) -> (usize, usize, bool) {
    let f = sample_f(l);
    let data = CycloData::from_f(&f, None).expect("sample f");
    let red = CycloReducer::new(data, GenSet::Set1);
    let alg = CycloSerg::new(n, f).expect("small n");
    let basis = alg.basis();
    let mut index = std::collections::HashMap::<(NormalKey, Vec<u32>), usize>::new();
    let mut rows = Vec::new();
    let mut bounded = true;
    for m in &basis {
        let e = word_expr(&Word::ups(n), &[(GRat::one(), m.to_word())], &|g| {
            nu_image(n, g, Perturbation::None)
        });
        let Ok(img) = red.normalize(&e) else {
            bounded = false;
            continue;
        };
        bounded &= img.max_strand_dots() < l;
        let mut row = SparseRow::new();
        for (k, c) in img.terms() {
            for (zm, x) in c.terms() {
                let next = index.len();
                row.insert(
                    *index.entry((k.clone(), zm.clone())).or_insert(next),
                    x.clone(),
                );
            }
        }
        rows.push(row);
    }
    (rank(rows), basis.len(), bounded)
}

/// Both reduction routes on `count` random morphisms; returns (agreements, attempts, failures).
pub fn routes_agree(seed: u64, count: usize) -> (usize, usize, Vec<String>) {
    let mut r = rng(seed);
    let shape = StackShape {
        depth: 5,
        max_width: 4,
        max_black: 4,
    };
    let words = ["u", "uu", "du", "ud", "", "ddu"];
    let targets = ["u", "uu", "ud", "du", "du", "d"];
    let mut ok = 0;
    let mut tried = 0;
    let mut bad = Vec::new();
    let mut k = 0;
    while tried < count && k < 20 * count {
        k += 1;
        let l = 1 + (k % 3) as u32;
        let data = CycloData::from_f(&sample_f(l), None).expect("sample f");
        let red = CycloReducer::new(
            data,
            if k % 2 == 0 {
                GenSet::Set1
            } else {
                GenSet::Set2
            },
        );
        let i = k % words.len();
        let (a, b): (Word, Word) = (
            words[i].parse().expect("word"),
            targets[i].parse().expect("word"),
        );
        let Some(e) = random_expr_between(&mut r, &a, &b, &shape, 2) else {
            continue;
        };
        tried += 1;
        let direct = red.normalize(&e);
        let via = red.lift(&e).and_then(|m| gamma_reduce(&red, &m));
        match (direct, via) {
            (Ok(x), Ok(y)) if x == y && x.max_strand_dots() < l => ok += 1,
            (x, y) => bad.push(format!(
                "l = {l}, {a} -> {b}: {:?} vs {:?}",
                x.map(|m| m.to_string()),
                y.map(|m| m.to_string())
            )),
        }
    }
    (ok, tried, bad)
}

/// Reduction is compatible with the algebra product on sampled elements.
fn ring_map_samples(seed: u64) -> bool {
    use rand::Rng;
    let q = CycloSerg::new(2, sample_f(3)).expect("small");
    let mut r = rng(seed);
    let gens = q.gens();
    let random = |r: &mut rand_chacha::ChaCha8Rng| {
        let len = r.random_range(0..6);
        let w: Vec<_> = (0..len)
            .map(|_| gens[r.random_range(0..gens.len())])
            .collect();
        q.alg.word(&w).unwrap_or_else(|_| AElem::zero())
    };
    (0..30).all(|_| {
        let (a, b) = (random(&mut r), random(&mut r));
        q.reduce(&q.alg.mul(&a, &b)) == q.mul(&q.reduce(&a), &q.reduce(&b))
    })
}

pub fn cyclo_suite(seed: u64, count: usize) -> Report {
    let mut rep = dimensions(DIM_CASES);
    rep.suite = "cyclo".into();
    for l in 1..=3 {
        let data = CycloData::from_f(&sample_f(l), None).expect("sample f");
        rep.merge(data.check_e1_e2(8));
        match set_equivalence(&data, 2) {
            Ok(sub) => {
                let failed: Vec<String> = sub.failures().map(|c| c.label.clone()).collect();
                rep.check(
                    format!("generating sets agree, l = {l}"),
                    failed.is_empty(),
                    failed.join("; "),
                );
            }
            Err(e) => rep.check(
                format!("generating sets agree, l = {l}"),
                false,
                e.to_string(),
            ),
        }
    }
    for (n, l) in [(1, 2), (2, 2)] {
        let (rk, count, bounded) = gamma_bijective(n, l);
        rep.check(
            format!("basis monomials of Serg_{n}^f map onto the basis keys, l = {l}"),
            rk == count && bounded,
            format!("rank {rk} of {count}"),
        );
    }
    rep.check(
        "reduction in Serg_2^f respects products on samples",
        ring_map_samples(seed),
        "",
    );
    let (ok, tried, bad) = routes_agree(seed, count);
    rep.check(
        format!("both reduction routes agree on {tried} random morphisms"),
        ok == tried && tried == count,
        bad.join("; "),
    );
    match obcf_bridge(&sample_f(2), 3) {
        Ok((_, sub)) => rep.merge(sub),
        Err(e) => rep.check("bridge", false, e.to_string()),
    }
    rep.notes.push(format!("seed {seed}"));
    rep
}
