use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerian-forge"))
        .args(args)
        .env_remove("EULERIAN_FORGE_JOBS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn stats_of_a_colored_permutation() {
    let v = json(&["stats", "--l", "3", "--perm", "5^2 2^1 4^0 3^2 1^2 6^0"]);
    let s = &v["stats"];
    assert_eq!(s["DES"], serde_json::json!([3, 4]));
    assert_eq!(s["maj"], 7);
    assert_eq!(s["exc"], 1);
    assert_eq!(s["fexc"], 10);
    assert_eq!(s["fmaj"], 28);
    assert_eq!(s["fixvec"], serde_json::json!([1, 1, 0]));
}

#[test]
fn first_polynomial() {
    assert_eq!(json(&["apoly", "--n", "1", "--l", "2"])["poly"], "r+t");
    let csv = run(&["apoly", "--n", "2", "--l", "1", "--format", "csv"]);
    assert!(csv.status.success());
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("k,j,coefficient"));
}

#[test]
fn word_map_and_back() {
    let v = json(&["bijection", "--map", "f", "--input", "0 3 1 1", "--l", "2"]);
    let banner = v["banner"].as_str().unwrap().to_owned();
    let back = json(&["bijection", "--map", "f", "--inverse", "--input", &banner, "--l", "2"]);
    assert!(back.to_string().contains("[0,3,1,1]"), "{back}");
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "qeuler", "--n", "3", "--l", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(bad.status.code(), Some(2));
    let usage = run(&["apoly", "--n"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "stats", "--n", "3", "--l", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
