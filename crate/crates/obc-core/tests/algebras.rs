use obc_core::suites::algebras::{affine_sergeev, sergeev, walled};
use obc_core::suites::fuzz::{integrality, oracle_fuzz};

#[test]
fn sergeev_up_to_three() {
    let rep = sergeev(3);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn walled_up_to_four() {
    let rep = walled(4);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn affine_sergeev_up_to_three() {
    let rep = affine_sergeev(3);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn fuzz_against_psi() {
    let rep = oracle_fuzz(5, 60, 2);
    assert!(rep.passed(), "{rep}");
    let rep = integrality(5, 100);
    assert!(rep.passed(), "{rep}");
}
