use std::process::{Command, Output};

use serde_json::Value;

fn obc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obc")).args(args).output().expect("run obc")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = obc(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), v)
}

#[test]
fn clifford_squares_to_identity() {
    let (code, v) = json(&["normalize", "--expr", "c . c"]);
    assert_eq!(code, 0);
    let terms = v["result"]["terms"].as_array().expect("terms");
    assert_eq!(terms.len(), 1);
    let out = obc(&["normalize", "--expr", "c . c"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "id(u)");
}

#[test]
fn dimension_of_end_up_up() {
    let (code, v) = json(&["dim", "--src", "uu", "--dst", "uu", "--max-dots", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 8);
    let (_, v) = json(&["dim", "--src", "", "--dst", "", "--max-dots", "3"]);
    assert_eq!(v["result"]["dim"], 5);
    let (_, v) = json(&["dim", "--src", "uu", "--f", "t^2-3"]);
    assert_eq!(v["result"]["dim"], 32);
}

#[test]
fn report_shape_is_stable() {
    for args in [vec!["normalize", "--expr", "(x*id(u)) . s"], vec!["phi", "--n", "1", "--expr", "c"], vec!["verify", "--suite", "sergeev", "--r", "2"]] {
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        for field in ["verb", "status", "result", "checks", "notes", "counters", "timing_ms"] {
            assert!(v.get(field).is_some(), "{field} missing for {args:?}");
        }
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn aobc_relations_pass_at_n2() {
    let (code, v) = json(&["verify", "--suite", "aobc-relations", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().expect("checks").iter().all(|c| c["passed"] == true));
}

#[test]
fn fuzz_records_its_seed() {
    let (code, v) = json(&["verify", "--suite", "oracle-fuzz", "--seed", "7", "--count", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 7);
    assert!(v["checks"][0]["label"].as_str().expect("label").starts_with("20/20"));
}

#[test]
fn output_is_deterministic() {
    let a = obc(&["verify", "--suite", "integrality", "--seed", "3", "--count", "10"]);
    let b = obc(&["verify", "--suite", "integrality", "--seed", "3", "--count", "10"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(obc(&["normalize", "--expr", "c . "]).status.code(), Some(2));
    assert_eq!(obc(&["normalize", "--expr", "cap . cap"]).status.code(), Some(2));
    assert_eq!(obc(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(obc(&["frobnicate"]).status.code(), Some(2));
    let out = obc(&["normalize", "--expr", "s .", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json error");
    assert!(v["error"].as_str().expect("message").contains("1:"));
}

#[test]
fn central_element_commutes() {
    let (code, v) = json(&["central", "--n", "2", "--k", "3", "--src", "u"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().expect("checks").len(), 8);
}

#[test]
fn cyclotomic_reduction() {
    let out = obc(&["cyclo", "--f", "t^2-3", "--expr", "x . x"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("(3)"));
}

#[test]
fn psim_top_component() {
    let (code, v) = json(&["psim", "--n", "3", "--expr", "x"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["top"].as_array().expect("top").len(), 1);
}
