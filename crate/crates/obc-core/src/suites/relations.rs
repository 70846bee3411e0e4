//! Defining relations and their consequences, checked in two independent ways: the
//! normal forms of both sides agree, and their Psi matrices agree.

use super::Report;
use crate::diagrams::{parse_expr, Expr, Word};
use crate::exec::Exec;
use crate::normalform::{eval_loop, normalize, LoopOrientation, NormalKey, NormalMorphism};
use crate::qrep::{psi_eval, QnContext};
use crate::scalars::{delta_prime, BubblePoly};

/// `lhs = rhs` in text syntax.
pub type Relation = (&'static str, &'static str);

pub const OB: &[Relation] = &[
    ("s . s", "id(uu)"),
    (
        "(s*id(u)) . (id(u)*s) . (s*id(u))",
        "(id(u)*s) . (s*id(u)) . (id(u)*s)",
    ),
    ("(id(u)*cap) . (cup*id(u))", "id(u)"),
    ("(cap*id(d)) . (id(d)*cup)", "id(d)"),
    ("rs . ls", "id(ud)"),
    ("ls . rs", "id(du)"),
];

pub const OBC: &[Relation] = &[
    ("c . c", "id(u)"),
    ("s . (c*id(u))", "(id(u)*c) . s"),
    ("cap . (id(d)*c) . rcup", "0"),
];

pub const AOBC: &[Relation] = &[
    ("x . c", "- c . x"),
    (
        "(x*id(u)) . s - s . (id(u)*x)",
        "id(uu) - (c*id(u)) . (id(u)*c)",
    ),
    ("cd . cd", "-id(d)"),
    ("xd . cd", "- cd . xd"),
];

pub const OBC_SLIDES: &[Relation] = &[
    ("(c*id(d)) . cup", "(id(u)*cd) . cup"),
    ("(id(d)*c) . rcup", "(cd*id(u)) . rcup"),
    ("cap . (cd*id(u))", "cap . (id(d)*c)"),
    ("rcap . (c*id(d))", "rcap . (id(u)*cd)"),
    ("s . (id(u)*c)", "(c*id(u)) . s"),
    ("rs . (cd*id(u))", "(id(u)*cd) . rs"),
    ("rs . (id(d)*c)", "(c*id(d)) . rs"),
    ("ls . (c*id(d))", "(id(d)*c) . ls"),
    ("ls . (id(u)*cd)", "(cd*id(u)) . ls"),
    ("ds . (cd*id(d))", "(id(d)*cd) . ds"),
    ("ds . (id(d)*cd)", "(cd*id(d)) . ds"),
];

pub const AOBC_SLIDES: &[Relation] = &[
    ("(x*id(d)) . cup", "(id(u)*xd) . cup"),
    ("(id(d)*x) . rcup", "(xd*id(u)) . rcup"),
    ("cap . (xd*id(u))", "cap . (id(d)*x)"),
    ("rcap . (id(u)*xd)", "rcap . (x*id(d))"),
    (
        "(id(u)*x) . s",
        "s . (x*id(u)) - id(uu) - (c*id(u)) . (id(u)*c)",
    ),
    (
        "rs . (xd*id(u))",
        "(id(u)*xd) . rs + cup . cap + (c*id(d)) . cup . cap . (id(d)*c)",
    ),
    (
        "(x*id(d)) . rs",
        "rs . (id(d)*x) - cup . cap + (c*id(d)) . cup . cap . (id(d)*c)",
    ),
    (
        "ls . (id(u)*xd)",
        "(xd*id(u)) . ls - rcup . rcap - (id(d)*c) . rcup . rcap . (c*id(d))",
    ),
    (
        "(id(d)*x) . ls",
        "ls . (x*id(d)) + rcup . rcap - (id(d)*c) . rcup . rcap . (c*id(d))",
    ),
    (
        "ds . (id(d)*xd)",
        "(xd*id(d)) . ds + id(dd) + (cd*id(d)) . (id(d)*cd)",
    ),
    (
        "ds . (xd*id(d))",
        "(id(d)*xd) . ds - id(dd) + (cd*id(d)) . (id(d)*cd)",
    ),
];

/// Bubbles that vanish: a white dot on the loop, or an even number of black dots.
pub fn vanishing_bubbles() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for k in 0..4 {
        let dots = "(id(d)*x) . ".repeat(k);
        out.push((format!("cap . (id(d)*c) . {dots}rcup"), "0".to_string()));
        out.push((
            format!("rcap . (c*id(d)) . {}cup", "(x*id(d)) . ".repeat(k)),
            "0".to_string(),
        ));
        if k % 2 == 0 {
            out.push((format!("cap . {dots}rcup"), "0".to_string()));
        }
    }
    out
}

fn parse_side(text: &str, like: &Expr) -> Result<Expr, String> {
    if text.trim() == "0" {
        return Ok(Expr::zero(like.src().clone(), like.dst().clone()));
    }
    parse_expr(text).map_err(|e| e.to_string())
}

/// One relation: `Ok(())` or the reason it fails.
pub fn check_relation(lhs: &str, rhs: &str, ns: &[usize], modules: &[&str]) -> Result<(), String> {
    let l = parse_expr(lhs).map_err(|e| e.to_string())?;
    let r = parse_side(rhs, &l)?;
    if l.src() != r.src() || l.dst() != r.dst() {
        return Err("sides have different types".into());
    }
    let (a, b) = (
        normalize(&l).map_err(|e| e.to_string())?,
        normalize(&r).map_err(|e| e.to_string())?,
    );
    if a != b {
        return Err(format!("normal forms differ: {a} vs {b}"));
    }
    for &n in ns {
        let ctx = QnContext::new(n).map_err(|e| e.to_string())?;
        for m in modules {
            let w: Word = m
                .parse()
                .map_err(|e: crate::diagrams::DiagramError| e.to_string())?;
            let (pa, pb) = (
                psi_eval(&ctx, &l, &w).map_err(|e| e.to_string())?,
                psi_eval(&ctx, &r, &w).map_err(|e| e.to_string())?,
            );
            if pa != pb {
                return Err(format!("Psi matrices differ at n = {n}, module '{m}'"));
            }
        }
    }
    Ok(())
}

fn run(
    suite: &str,
    rels: &[(String, String)],
    ns: &[usize],
    modules: &[&str],
    exec: Exec,
) -> Report {
    let mut rep = Report::new(suite);
    let results = exec.map(rels, |(l, r)| check_relation(l, r, ns, modules));
    for ((l, r), res) in rels.iter().zip(results) {
        let detail = res.err().unwrap_or_default();
        rep.check(format!("{l} = {r}"), detail.is_empty(), detail);
    }
    rep
}

fn owned(rels: &[&[Relation]]) -> Vec<(String, String)> {
    rels.iter()
        .flat_map(|r| r.iter())
        .map(|(l, r)| (l.to_string(), r.to_string()))
        .collect()
}

pub const MODULES: &[&str] = &["", "u"];

pub fn obc_relations(ns: &[usize]) -> Report {
    run(
        "obc-relations",
        &owned(&[OB, OBC]),
        ns,
        MODULES,
        Exec::default(),
    )
}

pub fn aobc_relations(ns: &[usize]) -> Report {
    let mut rels = owned(&[AOBC]);
    rels.extend(vanishing_bubbles());
    run("aobc-relations", &rels, ns, MODULES, Exec::default())
}

pub fn slides(ns: &[usize]) -> Report {
    run(
        "slides",
        &owned(&[OBC_SLIDES, AOBC_SLIDES]),
        ns,
        MODULES,
        Exec::default(),
    )
}

/// Loop evaluation: vanishing bubbles, counterclockwise bubbles as generators and the
/// clockwise ones against the inverse series.
pub fn bubbles(ns: &[usize]) -> Report {
    let mut rep = run(
        "bubbles",
        &vanishing_bubbles(),
        ns,
        MODULES,
        Exec::default(),
    );
    let empty = NormalKey::identity(&Word::empty());
    let coeff = |m: &NormalMorphism| m.coeff(&empty);
    for k in 1..=5u32 {
        let cw = format!("rcap . {}cup", "(x*id(d)) . ".repeat(k as usize));
        let ccw = format!("cap . {}rcup", "(id(d)*x) . ".repeat(k as usize));
        let (cw_nf, ccw_nf) = (
            normalize(&parse_expr(&cw).expect("bubble")),
            normalize(&parse_expr(&ccw).expect("bubble")),
        );
        let (Ok(cw_nf), Ok(ccw_nf)) = (cw_nf, ccw_nf) else {
            rep.check(
                format!("bubbles with {k} dots normalize"),
                false,
                "normalize failed",
            );
            continue;
        };
        let want_ccw = if k % 2 == 1 {
            BubblePoly::delta(k)
        } else {
            BubblePoly::zero()
        };
        rep.check(
            format!("ccw bubble with {k} dots"),
            coeff(&ccw_nf) == want_ccw,
            coeff(&ccw_nf).to_string(),
        );
        rep.check(
            format!("cw bubble with {k} dots is the inverse-series coefficient"),
            coeff(&cw_nf) == delta_prime(k),
            coeff(&cw_nf).to_string(),
        );
        rep.check(
            format!("eval_loop agrees at {k} dots"),
            eval_loop(LoopOrientation::Cw, false, k) == delta_prime(k),
            "",
        );
    }
    // sum_{0<=i<=(k+1)/2} D(2i-1) D'(k-2i) = 0 for odd k, with D(-1) = 1, D'(-1) = -1,
    // the clockwise bubbles taken from the rewriting engine
    let cw = |j: i64| -> Option<BubblePoly> {
        if j < 0 {
            return Some(BubblePoly::from_int(-1));
        }
        let text = format!("rcap . {}cup", "(x*id(d)) . ".repeat(j as usize));
        normalize(&parse_expr(&text).ok()?).ok().map(|m| coeff(&m))
    };
    for k in [1i64, 3, 5] {
        let mut total = BubblePoly::zero();
        for i in 0..=(k + 1) / 2 {
            let d = if i == 0 {
                BubblePoly::one()
            } else {
                BubblePoly::delta(2 * i as u32 - 1)
            };
            let Some(dp) = cw(k - 2 * i) else { continue };
            total = &total + &(&d * &dp);
        }
        rep.check(
            format!("clockwise/counterclockwise identity at k = {k}"),
            total.is_zero(),
            total.to_string(),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_wrong_relation_is_caught() {
        assert!(check_relation("s . (c*id(u))", "(c*id(u)) . s", &[1], &["u"]).is_err());
        assert!(check_relation("x . c", "c . x", &[1], &[""]).is_err());
    }

    #[test]
    fn relation_tables_hold_at_rank_one() {
        for rep in [
            obc_relations(&[1]),
            aobc_relations(&[1]),
            slides(&[1]),
            bubbles(&[1]),
        ] {
            assert!(rep.passed(), "{rep}");
        }
    }
}
