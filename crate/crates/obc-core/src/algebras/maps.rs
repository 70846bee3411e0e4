//! Generators of the algebras as diagrams, presentations checked through the normal
//! form, and spans reached by closure.

use std::collections::HashMap;

use super::AGen;
use crate::diagrams::{expr_compose, Expr, Gen, Layer, Word};
use crate::normalform::{nm_compose, NormalError, NormalMorphism, Normalizer};
use crate::qrep::linalg::{Echelon, SparseRow};
use crate::scalars::GRat;
use crate::suites::Report;

/// `lhs = rhs`, each side a linear combination of generator words. Words read left to
/// right as products, so the rightmost generator acts first.
#[derive(Clone, Debug)]
pub struct AlgRelation<G> {
    pub label: String,
    pub lhs: Vec<(GRat, Vec<G>)>,
    pub rhs: Vec<(GRat, Vec<G>)>,
}

impl<G> AlgRelation<G> {
    fn new(label: impl Into<String>, lhs: Vec<(i64, Vec<G>)>, rhs: Vec<(i64, Vec<G>)>) -> Self {
        let conv =
            |v: Vec<(i64, Vec<G>)>| v.into_iter().map(|(c, w)| (GRat::from_int(c), w)).collect();
        AlgRelation {
            label: label.into(),
            lhs: conv(lhs),
            rhs: conv(rhs),
        }
    }
}

/// Ways of spoiling the image of `x`, used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    None,
    /// `x -> x + 1`
    Shift,
    /// `x -> 2x`
    Double,
}

fn layer(left: Word, g: Gen, right: Word) -> Expr {
    Expr::from_layer(Layer::new(left, g, right))
}

/// The image of a generator in `End(up^r)`, strands numbered from the right.
pub fn nu_image(r: usize, g: AGen, pert: Perturbation) -> Expr {
    match g {
        AGen::S(i) => layer(Word::ups(r - 2 - i), Gen::UpCross, Word::ups(i)),
        AGen::C(i) => layer(Word::ups(r - 1 - i), Gen::WhiteDot, Word::ups(i)),
        AGen::X(i) => {
            let x = layer(Word::ups(r - 1 - i), Gen::BlackDot, Word::ups(i));
            match pert {
                Perturbation::None => x,
                Perturbation::Double => x.scale(&GRat::from_int(2)),
                Perturbation::Shift => x.add(&Expr::identity(Word::ups(r))).expect("same type"),
            }
        }
    }
}

/// The finite Sergeev generators only.
pub fn phi_image(r: usize, g: AGen) -> Option<Expr> {
    (!matches!(g, AGen::X(_))).then(|| nu_image(r, g, Perturbation::None))
}

/// Generators of the walled Brauer-Clifford superalgebra on `down^s up^r`. Indices are
/// 0-based from the right: `0..r` are the upward strands, `r..r+s` the downward ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WGen {
    S(usize),
    E,
    C(usize),
}

pub fn walled_image(r: usize, s: usize, g: WGen) -> Expr {
    let n = r + s;
    let dir_word = |from: usize, to: usize| -> Word { Word::walled(r, s).slice(from, to) };
    match g {
        WGen::S(i) => {
            let p = n - 2 - i;
            let gen = if i < r { Gen::UpCross } else { Gen::DownCross };
            layer(dir_word(0, p), gen, dir_word(p + 2, n))
        }
        WGen::C(i) => {
            let p = n - 1 - i;
            let gen = if i < r {
                Gen::WhiteDot
            } else {
                Gen::DownWhiteDot
            };
            layer(dir_word(0, p), gen, dir_word(p + 1, n)).scale(&GRat::i())
        }
        WGen::E => {
            let (l, rt) = (Word::downs(s - 1), Word::ups(r - 1));
            expr_compose(
                &layer(l.clone(), Gen::RCup, rt.clone()),
                &layer(l, Gen::LCap, rt),
            )
            .expect("cap then cup")
        }
    }
}

/// Evaluates a linear combination of words through `image`.
pub fn word_expr<G: Copy>(src: &Word, side: &[(GRat, Vec<G>)], image: &impl Fn(G) -> Expr) -> Expr {
    let mut out = Expr::zero(src.clone(), src.clone());
    for (c, word) in side {
        let mut cur = Expr::identity(src.clone());
        for g in word {
            cur = expr_compose(&cur, &image(*g)).expect("endomorphisms");
        }
        out = out.add(&cur.scale(c)).expect("endomorphisms");
    }
    out
}

/// Checks every relation after mapping generators through `image`, comparing normal forms.
pub fn verify_presentation<G: Copy>(
    suite: &str,
    src: &Word,
    rels: &[AlgRelation<G>],
    image: impl Fn(G) -> Expr,
) -> Report {
    let nz = Normalizer::new();
    let mut rep = Report::new(suite);
    for rel in rels {
        let (l, r) = (
            word_expr(src, &rel.lhs, &image),
            word_expr(src, &rel.rhs, &image),
        );
        match (nz.normalize(&l), nz.normalize(&r)) {
            (Ok(a), Ok(b)) => {
                let ok = a == b;
                rep.check(
                    rel.label.clone(),
                    ok,
                    if ok {
                        String::new()
                    } else {
                        format!("{} vs {}", a, b)
                    },
                );
            }
            (Err(e), _) | (_, Err(e)) => rep.check(rel.label.clone(), false, e.to_string()),
        }
    }
    rep
}

fn w<G>(c: i64, g: Vec<G>) -> (i64, Vec<G>) {
    (c, g)
}

/// Relations of the finite Sergeev superalgebra on `r` strands.
pub fn sergeev_relations(r: usize) -> Vec<AlgRelation<AGen>> {
    use AGen::{C, S};
    let mut out = Vec::new();
    for i in 0..r.saturating_sub(1) {
        out.push(AlgRelation::new(
            format!("s{0} s{0} = 1", i + 1),
            vec![w(1, vec![S(i), S(i)])],
            vec![w(1, vec![])],
        ));
        out.push(AlgRelation::new(
            format!("s{0} c{0} = c{1} s{0}", i + 1, i + 2),
            vec![w(1, vec![S(i), C(i)])],
            vec![w(1, vec![C(i + 1), S(i)])],
        ));
        for j in i + 2..r.saturating_sub(1) {
            out.push(AlgRelation::new(
                format!("s{} s{} = s{1} s{0}", i + 1, j + 1),
                vec![w(1, vec![S(i), S(j)])],
                vec![w(1, vec![S(j), S(i)])],
            ));
        }
        if i + 2 < r {
            out.push(AlgRelation::new(
                format!("braid s{} s{}", i + 1, i + 2),
                vec![w(1, vec![S(i), S(i + 1), S(i)])],
                vec![w(1, vec![S(i + 1), S(i), S(i + 1)])],
            ));
        }
        for j in 0..r {
            if j != i && j != i + 1 {
                out.push(AlgRelation::new(
                    format!("s{} c{} = c{1} s{0}", i + 1, j + 1),
                    vec![w(1, vec![S(i), C(j)])],
                    vec![w(1, vec![C(j), S(i)])],
                ));
            }
        }
    }
    for i in 0..r {
        out.push(AlgRelation::new(
            format!("c{0} c{0} = 1", i + 1),
            vec![w(1, vec![C(i), C(i)])],
            vec![w(1, vec![])],
        ));
        for j in i + 1..r {
            out.push(AlgRelation::new(
                format!("c{} c{} = -c{1} c{0}", i + 1, j + 1),
                vec![w(1, vec![C(i), C(j)])],
                vec![w(-1, vec![C(j), C(i)])],
            ));
        }
    }
    out
}

/// Relations of the degenerate affine Sergeev superalgebra on `r` strands.
pub fn aserg_relations(r: usize) -> Vec<AlgRelation<AGen>> {
    use AGen::{C, S, X};
    let mut out = sergeev_relations(r);
    for i in 0..r {
        for j in i + 1..r {
            out.push(AlgRelation::new(
                format!("x{} x{} = x{1} x{0}", i + 1, j + 1),
                vec![w(1, vec![X(i), X(j)])],
                vec![w(1, vec![X(j), X(i)])],
            ));
        }
        for j in 0..r {
            let (label, sign) = if i == j {
                (format!("c{0} x{0} = -x{0} c{0}", i + 1), -1)
            } else {
                (format!("c{} x{} = x{1} c{0}", i + 1, j + 1), 1)
            };
            out.push(AlgRelation::new(
                label,
                vec![w(1, vec![C(i), X(j)])],
                vec![w(sign, vec![X(j), C(i)])],
            ));
        }
    }
    for i in 0..r.saturating_sub(1) {
        out.push(AlgRelation::new(
            format!("s{0} x{0} = x{1} s{0} - 1 - c{0} c{1}", i + 1, i + 2),
            vec![w(1, vec![S(i), X(i)])],
            vec![
                w(1, vec![X(i + 1), S(i)]),
                w(-1, vec![]),
                w(-1, vec![C(i), C(i + 1)]),
            ],
        ));
        for j in 0..r {
            if j != i && j != i + 1 {
                out.push(AlgRelation::new(
                    format!("s{} x{} = x{1} s{0}", i + 1, j + 1),
                    vec![w(1, vec![S(i), X(j)])],
                    vec![w(1, vec![X(j), S(i)])],
                ));
            }
        }
    }
    out
}

/// Relations satisfied by the walled generators on `down^s up^r`, `r, s >= 1`. The
/// Clifford generators square to `-1` on upward strands and `1` on downward ones
/// because of the factor `sqrt(-1)`.
pub fn walled_relations(r: usize, s: usize) -> Vec<AlgRelation<WGen>> {
    use WGen::{C, E, S};
    let n = r + s;
    let sgens: Vec<usize> = (0..n - 1).filter(|&i| i + 1 != r).collect();
    let mut out = Vec::new();
    for &i in &sgens {
        out.push(AlgRelation::new(
            format!("s{0} s{0} = 1", i + 1),
            vec![w(1, vec![S(i), S(i)])],
            vec![w(1, vec![])],
        ));
        out.push(AlgRelation::new(
            format!("s{0} c{0} = c{1} s{0}", i + 1, i + 2),
            vec![w(1, vec![S(i), C(i)])],
            vec![w(1, vec![C(i + 1), S(i)])],
        ));
        if sgens.contains(&(i + 1)) {
            out.push(AlgRelation::new(
                format!("braid s{} s{}", i + 1, i + 2),
                vec![w(1, vec![S(i), S(i + 1), S(i)])],
                vec![w(1, vec![S(i + 1), S(i), S(i + 1)])],
            ));
        }
        for &j in sgens.iter().filter(|&&j| j > i + 1) {
            out.push(AlgRelation::new(
                format!("s{} s{} = s{1} s{0}", i + 1, j + 1),
                vec![w(1, vec![S(i), S(j)])],
                vec![w(1, vec![S(j), S(i)])],
            ));
        }
        if i + 2 < r || i > r {
            out.push(AlgRelation::new(
                format!("e s{} = s{0} e", i + 1),
                vec![w(1, vec![E, S(i)])],
                vec![w(1, vec![S(i), E])],
            ));
        }
    }
    for i in 0..n {
        let sq = if i < r { -1 } else { 1 };
        out.push(AlgRelation::new(
            format!("c{0} c{0} = {sq}", i + 1),
            vec![w(1, vec![C(i), C(i)])],
            vec![w(sq, vec![])],
        ));
        for j in i + 1..n {
            out.push(AlgRelation::new(
                format!("c{} c{} = -c{1} c{0}", i + 1, j + 1),
                vec![w(1, vec![C(i), C(j)])],
                vec![w(-1, vec![C(j), C(i)])],
            ));
        }
        if i + 1 != r && i != r {
            out.push(AlgRelation::new(
                format!("e c{} = c{0} e", i + 1),
                vec![w(1, vec![E, C(i)])],
                vec![w(1, vec![C(i), E])],
            ));
        }
    }
    let (a, b) = (r - 1, r);
    out.push(AlgRelation::new("e e = 0", vec![w(1, vec![E, E])], vec![]));
    out.push(AlgRelation::new(
        format!("e c{} = e c{}", a + 1, b + 1),
        vec![w(1, vec![E, C(a)])],
        vec![w(1, vec![E, C(b)])],
    ));
    out.push(AlgRelation::new(
        format!("c{} e = c{} e", a + 1, b + 1),
        vec![w(1, vec![C(a), E])],
        vec![w(1, vec![C(b), E])],
    ));
    out.push(AlgRelation::new(
        format!("e c{} e = 0", a + 1),
        vec![w(1, vec![E, C(a), E])],
        vec![],
    ));
    if r >= 2 {
        out.push(AlgRelation::new(
            format!("e s{} e = e", r - 1),
            vec![w(1, vec![E, S(r - 2), E])],
            vec![w(1, vec![E])],
        ));
    }
    if s >= 2 {
        out.push(AlgRelation::new(
            format!("e s{} e = e", r + 1),
            vec![w(1, vec![E, S(r), E])],
            vec![w(1, vec![E])],
        ));
    }
    out
}

fn coords(
    m: &NormalMorphism,
    index: &mut HashMap<(crate::normalform::NormalKey, Vec<u32>), usize>,
) -> SparseRow<GRat> {
    let mut row = SparseRow::new();
    for (k, c) in m.terms() {
        for (mono, x) in c.terms() {
            let next = index.len();
            row.insert(
                *index.entry((k.clone(), mono.clone())).or_insert(next),
                x.clone(),
            );
        }
    }
    row
}

/// Dimension of the span of all products of `gens` in `End(src)`.
pub fn closure_dim(src: &Word, gens: &[Expr]) -> Result<usize, NormalError> {
    let nz = Normalizer::new();
    let gens: Vec<NormalMorphism> = gens
        .iter()
        .map(|g| nz.normalize(g))
        .collect::<Result<_, _>>()?;
    let mut index = HashMap::new();
    let mut ech: Echelon<GRat> = Echelon::new();
    let one = NormalMorphism::identity(src);
    ech.insert(coords(&one, &mut index));
    let mut queue = vec![one];
    while let Some(e) = queue.pop() {
        for g in &gens {
            let next = nm_compose(&nz, &e, g)?;
            if ech.insert(coords(&next, &mut index)) {
                queue.push(next);
            }
        }
    }
    Ok(ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::ASerg;

    fn all_gens(r: usize) -> Vec<AGen> {
        let mut g: Vec<AGen> = (0..r.saturating_sub(1)).map(AGen::S).collect();
        g.extend((0..r).map(AGen::C));
        g.extend((0..r).map(AGen::X));
        g
    }

    #[test]
    fn affine_presentation_holds_in_diagrams() {
        for r in 1..=3 {
            let rep = verify_presentation("aserg", &Word::ups(r), &aserg_relations(r), |g| {
                nu_image(r, g, Perturbation::None)
            });
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn affine_presentation_holds_in_the_algebra() {
        let a = ASerg::new(3).unwrap();
        for rel in aserg_relations(3) {
            let side = |s: &[(GRat, Vec<AGen>)]| {
                let mut out = crate::algebras::AElem::zero();
                for (c, w) in s {
                    out.add_scaled(&a.word(w).unwrap(), c);
                }
                out
            };
            assert_eq!(side(&rel.lhs), side(&rel.rhs), "{}", rel.label);
        }
    }

    #[test]
    fn perturbed_dots_break_the_presentation() {
        let rels = aserg_relations(2);
        let failing = |p| {
            let rep = verify_presentation("control", &Word::ups(2), &rels, |g| nu_image(2, g, p));
            rep.failures().map(|c| c.label.clone()).collect::<Vec<_>>()
        };
        let doubled = failing(Perturbation::Double);
        assert!(
            doubled.iter().any(|l| l.starts_with("s1 x1")),
            "{doubled:?}"
        );
        let shifted = failing(Perturbation::Shift);
        assert!(
            shifted.iter().any(|l| l.starts_with("c1 x1")),
            "{shifted:?}"
        );
        assert!(
            !shifted.iter().any(|l| l.starts_with("s1 x1")),
            "{shifted:?}"
        );
    }

    #[test]
    fn walled_relations_hold() {
        for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let rep = verify_presentation(
                "walled",
                &Word::walled(r, s),
                &walled_relations(r, s),
                |g| walled_image(r, s, g),
            );
            assert!(rep.passed(), "r = {r}, s = {s}: {rep}");
        }
    }

    #[test]
    fn sergeev_closure() {
        for (r, d) in [(1, 2), (2, 8), (3, 48)] {
            let gens: Vec<Expr> = all_gens(r)
                .into_iter()
                .filter_map(|g| phi_image(r, g))
                .collect();
            assert_eq!(closure_dim(&Word::ups(r), &gens).unwrap(), d);
        }
    }
}
