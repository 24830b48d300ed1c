//! End-to-end tests of the `ddimer` binary: outputs, exit codes and
//! reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ddimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddimer")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn zd_of_fixtures() {
    for (file, want) in [("single_edge.graph", "3/2"), ("square.graph", "2"), ("grid4x4.graph", "36")] {
        let o = ddimer(&["zd", &fixture(file)]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        let out = stdout(&o);
        assert_eq!(out.lines().next(), Some(want), "{file}");
        assert!(out.contains("enumeration: agrees"), "{file}");
    }
}

#[test]
fn zd_json() {
    let o = ddimer(&["--json", "zd", &fixture("square.graph")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["determinant"], "2");
    assert_eq!(v["enumerated"], "2");
    assert_eq!(v["agree"], true);
}

#[test]
fn zd_skips_enumeration_past_the_cap() {
    let o = ddimer(&["zd", &fixture("grid4x4.graph"), "--cap", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn pr_by_split_agrees_with_enumeration() {
    let o = ddimer(&["pr", &fixture("grid4x4.graph"), "--split", "3,3,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pairing: (1 8)(2 5)(3 4)(6 7)"), "{out}");
    assert!(out.contains("enumeration: agrees"), "{out}");
}

#[test]
fn pr_on_square() {
    // On the 4-cycle with every vertex a node, both planar pairings have
    // normalized probability 1/4.
    let f = fixture("square.graph");
    for (split, pairing) in [("2,1,1", "(1 4)(2 3)"), ("1,2,1", "(1 2)(3 4)"), ("1,1,2", "(1 4)(2 3)")] {
        let o = ddimer(&["--json", "pr", &f, "--split", split]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["pairing"], pairing, "{split}");
        assert_eq!(v["formula"], "1/4", "{split}");
        assert_eq!(v["enumerated"], "1/4", "{split}");
    }
}

#[test]
fn pr_with_explicit_pairings() {
    let f = fixture("square.graph");
    let o = ddimer(&["pr", &f, "--pairing", "(1 2)(3 4)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pr: 1/4") && out.contains("enumeration: agrees"), "{out}");
    // A crossing pairing has no Y polynomial; its probability is enumerated.
    let o = ddimer(&["pr", &f, "--pairing", "(1 3)(2 4)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pr: 0") && out.contains("non-planar"), "{out}");
}

#[test]
fn pr_rejects_a_bad_split() {
    let o = ddimer(&["pr", &fixture("grid4x4.graph"), "--split", "6,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn qmatrix_two_nodes() {
    let o = ddimer(&["qmatrix", "--coloring", "BW"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("[1]"));
}

#[test]
fn qmatrix_row_polynomial() {
    let o = ddimer(&["qmatrix", "--coloring", "BWBWBWBW", "--pairing", "(1 8)(3 4)(5 2)(7 6)"]);
    assert_eq!(o.status.code(), Some(0));
    let poly = stdout(&o);
    assert_eq!(poly.matches("Y[1,").count(), 6);
    assert!(poly.contains("+Y[1,8]Y[3,4]Y[5,2]Y[7,6]"));
    assert!(poly.contains("-Y[1,8]Y[3,6]Y[5,2]Y[7,4]"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(ddimer(&["zd", "/nonexistent/file.graph"]).status.code(), Some(2));
    assert_eq!(ddimer(&["qmatrix", "--coloring", "BB"]).status.code(), Some(2));
    assert_eq!(ddimer(&["qmatrix", "--coloring", "BXW"]).status.code(), Some(2));
    assert_eq!(ddimer(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ddimer(&["pr", &fixture("square.graph"), "--pairing", "(1 2"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("ddimer-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "vertex 1 B 0 0\nvertex 2 B 1 0\nedge 1 2 1\n").unwrap();
    assert_eq!(ddimer(&["zd", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_kuo_fifty_instances() {
    let o = ddimer(&["verify", "--suite", "kuo", "--count", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("50 passed, 0 failed\n"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["condense", "tripartite", "kasteleyn", "signs"] {
        let o = ddimer(&["verify", "--suite", suite, "--count", "10", "--seed", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(" 0 failed"), "{suite}");
    }
}

#[test]
fn reports_are_byte_identical() {
    for suite in ["kuo", "condense", "tripartite", "kasteleyn"] {
        let args = ["--json", "verify", "--suite", suite, "--count", "8", "--seed", "11"];
        let a = ddimer(&args);
        let b = ddimer(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{suite}");
    }
    let a = ddimer(&["verify", "--suite", "kuo", "--count", "8", "--seed", "12"]);
    let b = ddimer(&["verify", "--suite", "kuo", "--count", "8", "--seed", "11"]);
    assert_ne!(a.stdout, b.stdout, "different seeds give different instances");
}
