use obc_core::diagrams::{Expr, Word};
use obc_core::normalform::{Normalizer, Strategy};
use obc_core::qrep::{psi_eval, QnContext};
use obc_core::suites::random::{random_expr, random_word, rng, StackShape};

fn check(seed: u64, n: usize, shape: &StackShape, modules: &[&str]) -> Result<(), String> {
    let mut r = rng(seed);
    let src = random_word(&mut r, 3);
    let e = random_expr(&mut r, &src, shape);
    let nz = Normalizer::new();
    let nf = nz.normalize(&e).map_err(|x| x.to_string())?;
    let back: Expr = nf.to_expr();
    let ctx = QnContext::new(n).unwrap();
    for m in modules {
        let m: Word = m.parse().unwrap();
        let a = psi_eval(&ctx, &e, &m).map_err(|x| x.to_string())?;
        let b = psi_eval(&ctx, &back, &m).map_err(|x| x.to_string())?;
        if a != b {
            return Err(format!(
                "seed {seed}: {}\n normal form:\n{nf}",
                obc_core::diagrams::print_expr(&e)
            ));
        }
    }
    let split = nz
        .normalize_with(&e, Strategy::Split)
        .map_err(|x| x.to_string())?;
    if split != nf {
        return Err(format!("seed {seed}: strategies disagree"));
    }
    Ok(())
}

#[test]
fn normal_form_preserves_psi() {
    let shape = StackShape {
        depth: 7,
        max_width: 4,
        max_black: 3,
    };
    let fails: Vec<String> = (0..150)
        .filter_map(|s| check(s, 2, &shape, &["", "u"]).err())
        .collect();
    assert!(
        fails.is_empty(),
        "{} failures, first:\n{}",
        fails.len(),
        fails[0]
    );
}

#[test]
fn normal_form_preserves_psi_other_ranks() {
    let shape = StackShape {
        depth: 6,
        max_width: 3,
        max_black: 2,
    };
    let mut fails: Vec<String> = (150..200)
        .filter_map(|s| check(s, 1, &shape, &["", "u", "ud"]).err())
        .collect();
    fails.extend((200..230).filter_map(|s| check(s, 3, &shape, &["", "d"]).err()));
    assert!(
        fails.is_empty(),
        "{} failures, first:\n{}",
        fails.len(),
        fails[0]
    );
}
