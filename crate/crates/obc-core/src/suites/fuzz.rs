//! Randomized oracles: normal forms against Psi matrices, and integrality of normal forms.

use rand::Rng;

use super::random::{random_expr, random_word, rng, StackShape};
use super::Report;
use crate::diagrams::Word;
use crate::normalform::normalize;
use crate::qrep::{psi_eval, QnContext, QrepError};

pub fn fuzz_shape() -> StackShape {
    StackShape {
        depth: 6,
        max_width: 4,
        max_black: 3,
    }
}

/// `psi(e) = psi(realize(normalize(e)))` on `count` seeded random expressions.
pub fn oracle_fuzz(seed: u64, count: usize, n: usize) -> Report {
    let mut rep = Report::new("oracle-fuzz");
    let ctx = match QnContext::new(n) {
        Ok(c) => c,
        Err(e) => {
            rep.check("context", false, e.to_string());
            return rep;
        }
    };
    let empty = Word::empty();
    let (mut agree, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    for i in 0..count {
        let mut r = rng(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
        let src = random_word(&mut r, 4);
        let e = random_expr(&mut r, &src, &fuzz_shape());
        let nf = match normalize(&e) {
            Ok(m) => m,
            Err(err) => {
                bad.push(format!("#{i}: {err}"));
                continue;
            }
        };
        match (
            psi_eval(&ctx, &e, &empty),
            psi_eval(&ctx, &nf.to_expr(), &empty),
        ) {
            (Ok(a), Ok(b)) if a == b => agree += 1,
            (Ok(_), Ok(_)) => bad.push(format!("#{i}: matrices differ")),
            (Err(QrepError::SizeCap { .. }), _) | (_, Err(QrepError::SizeCap { .. })) => {
                skipped += 1
            }
            (Err(x), _) | (_, Err(x)) => bad.push(format!("#{i}: {x}")),
        }
    }
    rep.check(
        format!("{agree}/{count} normalize-vs-Psi agreements at n = {n}"),
        agree == count,
        bad.join("; "),
    );
    rep.notes
        .push(format!("seed {seed}, skipped by size cap {skipped}"));
    rep
}

/// Integer coefficients stay integral under normalization.
pub fn integrality(seed: u64, count: usize) -> Report {
    let mut rep = Report::new("integrality");
    let mut bad = Vec::new();
    let mut checked = 0;
    for i in 0..count {
        let mut r = rng(seed.wrapping_mul(7919).wrapping_add(i as u64));
        let src = random_word(&mut r, 4);
        let mut e = random_expr(&mut r, &src, &fuzz_shape());
        for _ in 0..r.random_range(0..3) {
            let f = random_expr(&mut r, &src, &fuzz_shape());
            if f.dst() == e.dst() {
                let c = crate::scalars::GRat::from_int(r.random_range(-3..=3));
                e = e.add(&f.scale(&c)).expect("same type");
            }
        }
        match normalize(&e) {
            Ok(m) => {
                checked += 1;
                if !m.terms().values().all(|c| c.all_integral()) {
                    bad.push(format!("#{i}"));
                }
            }
            Err(err) => bad.push(format!("#{i}: {err}")),
        }
    }
    rep.check(
        format!("{checked} integer expressions have integer normal forms"),
        bad.is_empty() && checked == count,
        bad.join("; "),
    );
    rep.notes.push(format!("seed {seed}"));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let rep = oracle_fuzz(1, 10, 1);
        assert!(rep.passed(), "{rep}");
        let rep = integrality(1, 10);
        assert!(rep.passed(), "{rep}");
    }
}
