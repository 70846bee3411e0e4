use obc_core::suites::verma::{independence, verma_lemmas};

#[test]
fn lemmas_at_rank_three() {
    for r in 1..=3 {
        let rep = verma_lemmas(3, r, 5).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn images_are_independent() {
    for r in 0..=2 {
        let (rk, count, hit) = independence(3, r, 2, 2, 4).unwrap();
        assert!(!hit);
        assert_eq!(rk, count, "r = {r}");
    }
}
