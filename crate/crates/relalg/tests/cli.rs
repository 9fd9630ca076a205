//! End-to-end checks of the command-line surface: exit codes, parse errors,
//! and byte-for-byte determinism of repeated runs.

use std::process::{Command, Output};

fn relalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_tmp(name: &str, content: &str) -> String {
    let path = std::env::temp_dir().join(format!("relalg-cli-{name}"));
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn census_is_deterministic_and_matches_the_table() {
    let a = relalg(&["census"]);
    let b = relalg(&["census"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "byte-for-byte determinism");
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("65/37"));
    assert!(text.contains("119"));
}

#[test]
fn solve_exit_codes() {
    let evil = write_tmp(
        "evil.net",
        "vertices: 4\nedge 0 1 {a}\nedge 0 2 {a}\nedge 0 3 {b}\nedge 1 2 {b}\nedge 1 3 {a}\nedge 2 3 {a}\n",
    );
    let unsat = relalg(&["solve", "5_7", &evil]);
    assert_eq!(unsat.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unsat.stdout).contains("UNSAT"));

    let tri = write_tmp("tri.net", "vertices: 3\nedge 0 1 {a}\nedge 1 2 {a}\nedge 0 2 {b}\n");
    let sat = relalg(&["solve", "5_7", &tri]);
    assert_eq!(sat.status.code(), Some(0));

    // 56_65 has no sound decision procedure: UNKNOWN, exit 3
    let open = relalg(&["solve", "56_65", &tri]);
    assert_eq!(open.status.code(), Some(3));

    // parse errors exit 2
    let bad = write_tmp("bad.net", "vertices: 2\nedge 0 1 {zz}\n");
    let err = relalg(&["solve", "5_7", &bad]);
    assert_eq!(err.status.code(), Some(2));

    let nonsense = relalg(&["solve", "no_such_algebra_anywhere", &tri]);
    assert_eq!(nonsense.status.code(), Some(2));
}

#[test]
fn ap_and_rep_verify_roundtrip() {
    let fail = relalg(&["ap", "5_7", "4", "3", "4"]);
    assert_eq!(fail.status.code(), Some(1));
    let pass = relalg(&["ap", "7_7", "4", "3", "4"]);
    assert_eq!(pass.status.code(), Some(0));
    let rep = relalg(&["rep-verify", "5_7", "z5"]);
    assert_eq!(rep.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&rep.stdout).contains("valid: true"));
    // a representation given as a file
    let pentagon = write_tmp(
        "pentagon.rep",
        "domain: 5\natom a: (0,1) (1,2) (2,3) (3,4) (4,0) (1,0) (2,1) (3,2) (4,3) (0,4)\n\
         atom b: (0,2) (2,4) (4,1) (1,3) (3,0) (2,0) (4,2) (1,4) (3,1) (0,3)\n",
    );
    let rep2 = relalg(&["rep-verify", "5_7", &pentagon]);
    assert_eq!(rep2.status.code(), Some(0));
}

#[test]
fn witnesses_feed_back_as_networks() {
    // the witness networks printed by classify parse back as network files
    let out = relalg(&["classify", "5_7"]);
    assert_eq!(out.status.code(), Some(1), "5_7 has no normal representation");
    let text = String::from_utf8(out.stdout).unwrap();
    let section = text
        .split("extension 1:")
        .nth(1)
        .unwrap()
        .split("extension 2:")
        .next()
        .unwrap();
    let path = write_tmp("ext1.net", section.trim_start());
    let solved = relalg(&["solve", "5_7", &path]);
    assert!(solved.status.code() == Some(0), "an AP extension is consistent, hence satisfiable");
}

#[test]
fn enumerate_and_json() {
    let out = relalg(&["enumerate", "--atoms", "3", "--signature", "sym", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 7);
    let gadgets = relalg(&["gadgets", "--json"]);
    assert_eq!(gadgets.status.code(), Some(0));
}
