use obc_core::diagrams::{parse_expr, print_expr, Word};
use obc_core::normalform::{
    dim_filtered, enumerate_keys, eval_loop, nm_compose, normalize, DotBounds, LoopOrientation,
    NormalKey, NormalMorphism, Normalizer,
};
use obc_core::scalars::{delta_prime, BubblePoly};
use obc_core::suites::random::{random_expr, random_word, rng, StackShape};
use proptest::prelude::*;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn filtration_parity_integrality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let src = random_word(&mut r, 3);
        let e = random_expr(&mut r, &src, &StackShape::default());
        let nf = normalize(&e).unwrap();
        prop_assert!(nf.black_degree() as usize <= e.black_degree());
        let odd = e.parity().unwrap().is_odd();
        for (k, c) in nf.terms() {
            prop_assert_eq!(k.is_odd(), odd);
            prop_assert!(c.all_integral(), "{}", c);
        }
    }

    #[test]
    fn print_parse_roundtrip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let src = random_word(&mut r, 3);
        let e = random_expr(&mut r, &src, &StackShape::default());
        let text = print_expr(&e);
        prop_assert_eq!(parse_expr(&text).unwrap(), e);
    }
}

/// Odd-part partitions with total weight at most `k`, counted by direct recursion.
fn odd_partitions_up_to(k: u32) -> usize {
    fn go(left: u32, max_part: u32) -> usize {
        let mut total = 1;
        let mut p = 1;
        while p <= max_part.min(left) {
            total += go(left - p, p);
            p += 2;
        }
        total
    }
    go(k, k)
}

#[test]
fn filtered_dimension_matches_independent_count() {
    for (a, b) in [("", ""), ("u", "u"), ("uu", "uu"), ("ud", "ud"), ("d", "d")] {
        for k in 0..=3 {
            let keys = enumerate_keys(&w(a), &w(b), DotBounds::total(k)).unwrap();
            let count: usize = keys
                .iter()
                .map(|key| odd_partitions_up_to(k - key.total_dots()))
                .sum();
            assert_eq!(
                dim_filtered(&w(a), &w(b), k).unwrap(),
                count,
                "{a} -> {b}, k = {k}"
            );
        }
    }
    assert_eq!(dim_filtered(&w(""), &w(""), 3).unwrap(), 5);
    assert_eq!(dim_filtered(&w("u"), &w("u"), 0).unwrap(), 2);
    assert_eq!(dim_filtered(&w("u"), &w("d"), 2).unwrap(), 0);
}

fn all_words(max: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            for c in ['u', 'd'] {
                next.push(format!("{s}{c}"));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn key_count_depends_only_on_strand_count() {
    let flow = |s: &str| {
        s.chars()
            .map(|c| if c == 'u' { 1i32 } else { -1 })
            .sum::<i32>()
    };
    for bounds in [
        DotBounds::total(0),
        DotBounds::total(2),
        DotBounds::per_strand(2),
    ] {
        for a in all_words(3) {
            for b in all_words(3) {
                if flow(&a) != flow(&b) {
                    assert!(enumerate_keys(&w(&a), &w(&b), bounds).unwrap().is_empty());
                    continue;
                }
                let strands = (a.len() + b.len()) / 2;
                let reference =
                    enumerate_keys(&w(&"u".repeat(strands)), &w(&"u".repeat(strands)), bounds)
                        .unwrap()
                        .len();
                assert_eq!(
                    enumerate_keys(&w(&a), &w(&b), bounds).unwrap().len(),
                    reference,
                    "{a} -> {b}"
                );
            }
        }
    }
}

#[test]
fn spec_style_examples() {
    let nf = |s: &str| normalize(&parse_expr(s).unwrap()).unwrap();
    assert_eq!(
        nf("(id(u) * cap) . (cup * id(u))"),
        NormalMorphism::identity(&w("u"))
    );
    assert_eq!(nf("s . s"), NormalMorphism::identity(&w("uu")));
    assert!(nf("x . c + c . x").is_zero());
    assert_eq!(
        eval_loop(LoopOrientation::Ccw, false, 0),
        BubblePoly::zero()
    );
    assert_eq!(
        eval_loop(LoopOrientation::Ccw, false, 3),
        BubblePoly::delta(3)
    );
    assert_eq!(eval_loop(LoopOrientation::Ccw, true, 3), BubblePoly::zero());
    assert_eq!(
        eval_loop(LoopOrientation::Ccw, false, 4),
        BubblePoly::zero()
    );
    let cw3 = &BubblePoly::delta(3) - &(&BubblePoly::delta(1) * &BubblePoly::delta(1));
    assert_eq!(eval_loop(LoopOrientation::Cw, false, 3), cw3);
    assert_eq!(delta_prime(3), cw3);
    assert_eq!(
        enumerate_keys(&w("u"), &w("d"), DotBounds::total(3))
            .unwrap()
            .len(),
        0
    );
    assert_eq!(
        enumerate_keys(&w("u"), &w("u"), DotBounds::per_strand(2))
            .unwrap()
            .len(),
        4
    );
}

#[test]
fn clifford_multiplication_table() {
    let nz = Normalizer::new();
    let keys: Vec<NormalKey> = enumerate_keys(&w("u"), &w("u"), DotBounds::total(0)).unwrap();
    let id = NormalMorphism::identity(&w("u"));
    for k in &keys {
        let f = NormalMorphism::single(k.clone(), BubblePoly::one());
        assert_eq!(nm_compose(&nz, &id, &f).unwrap(), f);
        assert_eq!(nm_compose(&nz, &f, &id).unwrap(), f);
        // id . id = id and c . c = id
        assert_eq!(nm_compose(&nz, &f, &f).unwrap(), id);
    }
}

#[test]
fn dotted_loop_gives_bubble_coefficient() {
    let nz = Normalizer::new();
    let cup = normalize(&parse_expr("(xd * id(u)) . rcup").unwrap()).unwrap();
    let cap = normalize(&parse_expr("cap").unwrap()).unwrap();
    let out = nm_compose(&nz, &cap, &cup).unwrap();
    let empty = NormalKey::identity(&Word::empty());
    assert_eq!(out.len(), 1);
    assert!(!out.coeff(&empty).is_zero());
}

#[test]
fn json_goldens() {
    let nf = |s: &str| {
        normalize(&parse_expr(s).unwrap())
            .unwrap()
            .to_json()
            .to_string()
    };
    assert_eq!(nf("c . x"), GOLDEN_CX);
    assert_eq!(
        nf("rcap . (x * id(d)) . (x * id(d)) . (x * id(d)) . cup"),
        GOLDEN_BUBBLE
    );
    assert_eq!(nf("(x * id(u)) . s"), GOLDEN_XS);
}

const GOLDEN_CX: &str = r#"{"dst":"u","src":"u","terms":[{"coeff":"1","key":{"cliff":[1],"dots":[1],"dst":"u","matching":[[["bottom",0],["top",0]]],"src":"u"}}]}"#;
const GOLDEN_BUBBLE: &str = r#"{"dst":"","src":"","terms":[{"coeff":"D3 - D1^2","key":{"cliff":[],"dots":[],"dst":"","matching":[],"src":""}}]}"#;
const GOLDEN_XS: &str = r#"{"dst":"uu","src":"uu","terms":[{"coeff":"1","key":{"cliff":[0,0],"dots":[0,0],"dst":"uu","matching":[[["bottom",0],["top",0]],[["bottom",1],["top",1]]],"src":"uu"}},{"coeff":"1","key":{"cliff":[1,1],"dots":[0,0],"dst":"uu","matching":[[["bottom",0],["top",0]],[["bottom",1],["top",1]]],"src":"uu"}},{"coeff":"1","key":{"cliff":[0,0],"dots":[0,1],"dst":"uu","matching":[[["bottom",0],["top",1]],[["bottom",1],["top",0]]],"src":"uu"}}]}"#;
