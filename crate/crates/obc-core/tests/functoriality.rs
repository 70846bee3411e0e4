use obc_core::diagrams::{expr_compose, expr_tensor, Word};
use obc_core::qrep::{phi_eval, psi_eval, QnContext, QrepError};
use obc_core::suites::random::{random_expr, random_word, rng, StackShape};

#[test]
fn psi_respects_composition() {
    let ctx = QnContext::new(2).unwrap();
    let shape = StackShape {
        depth: 4,
        max_width: 3,
        max_black: 2,
    };
    let u: Word = "u".parse().unwrap();
    let mut checked = 0;
    for seed in 0..100 {
        let mut r = rng(seed);
        let src = random_word(&mut r, 2);
        let g = random_expr(&mut r, &src, &shape);
        let f = random_expr(&mut r, g.dst(), &shape);
        let fg = expr_compose(&f, &g).unwrap();
        let lhs = match psi_eval(&ctx, &fg, &u) {
            Ok(m) => m,
            Err(QrepError::SizeCap { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let rhs = psi_eval(&ctx, &f, &u)
            .unwrap()
            .mul(&psi_eval(&ctx, &g, &u).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 90, "only {checked} pairs fit the size cap");
}

#[test]
fn phi_respects_tensor_product() {
    let ctx = QnContext::new(2).unwrap();
    let shape = StackShape {
        depth: 4,
        max_width: 3,
        max_black: 0,
    };
    let mut checked = 0;
    for seed in 100..200 {
        let mut r = rng(seed);
        let (a, b) = (random_word(&mut r, 2), random_word(&mut r, 2));
        let f = random_expr(&mut r, &a, &shape);
        let g = random_expr(&mut r, &b, &shape);
        let lhs = match phi_eval(&ctx, &expr_tensor(&f, &g)) {
            Ok(m) => m,
            Err(QrepError::SizeCap { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let rhs = phi_eval(&ctx, &f)
            .unwrap()
            .tensor(&phi_eval(&ctx, &g).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 90, "only {checked} pairs fit the size cap");
}
