use proptest::prelude::*;

use obc_core::cyclotomic::{gamma_reduce, CycloData, CycloReducer, GenSet};
use obc_core::diagrams::{parse_expr, Word};
use obc_core::scalars::MPoly;
use obc_core::suites::cyclo::{cyclo_suite, dimensions, routes_agree, sample_f, DIM_CASES};
use obc_core::suites::random::{random_expr_between, rng, StackShape};

#[test]
fn dimensions_three_ways() {
    let rep = dimensions(DIM_CASES);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn full_suite() {
    let rep = cyclo_suite(11, 50);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn routes_agree_on_other_seeds() {
    for seed in [1, 2, 3] {
        let (ok, tried, bad) = routes_agree(seed, 50);
        assert_eq!((ok, tried), (50, 50), "seed {seed}: {bad:?}");
    }
}

#[test]
fn square_root_of_three() {
    // x^2 = 3 in the level two quotient by t^2 - 3, on either generating set
    let data = CycloData::from_f(&CycloData::parse_poly("t^2-3").unwrap(), None).unwrap();
    for set in [GenSet::Set1, GenSet::Set2] {
        let red = CycloReducer::new(data.clone(), set);
        let x4 = red.normalize(&parse_expr("x . x . x . x").unwrap()).unwrap();
        let id = red.normalize(&parse_expr("id(u)").unwrap()).unwrap();
        let mut nine = id.clone();
        nine.add_scaled(&id, &MPoly::constant(obc_core::scalars::GRat::from_int(8)));
        assert_eq!(x4, nine);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_is_idempotent(seed in 0u64..10_000, l in 1u32..=3, which in 0usize..4) {
        let words = [("u", "u"), ("du", ""), ("uu", "uu"), ("ud", "ud")];
        let (a, b): (Word, Word) = (words[which].0.parse().unwrap(), words[which].1.parse().unwrap());
        let shape = StackShape { depth: 4, max_width: 4, max_black: 4 };
        let Some(e) = random_expr_between(&mut rng(seed), &a, &b, &shape, 2) else { return Ok(()) };
        let red = CycloReducer::new(CycloData::from_f(&sample_f(l), None).unwrap(), GenSet::Set1);
        let m = red.normalize(&e).unwrap();
        prop_assert!(m.max_strand_dots() < l);
        prop_assert_eq!(red.reduce(m.clone()).unwrap(), m.clone());
        prop_assert_eq!(gamma_reduce(&red, &m).unwrap(), m);
    }
}
