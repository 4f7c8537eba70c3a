use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn sigma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma")).args(args).env_remove("SIGMA_DEFAULT_WINDOW").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_accepts_builtins_and_rejects_garbage() {
    let ok = sigma(&["validate", "trefoil"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("[1, 2, 1]"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"ring": {"coefficients": "Z", "deck_rank": 1}, "ranks": [1], "boundaries": [], "x": 0}"#).unwrap();
    let out = sigma(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"x\""));

    assert_eq!(sigma(&["validate", "no-such-complex"]).status.code(), Some(1));
}

#[test]
fn decide_reports_verdicts_and_exit_codes() {
    let out = sigma(&["decide", "bs12", "--xi", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdicts"][0]["status"], "No");

    let out = sigma(&["decide", "bs12", "--xi", "1", "--coeff", "Q"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdicts"][0]["status"], "Yes");

    assert_eq!(sigma(&["decide", "bs12", "--xi", "1,2"]).status.code(), Some(1));
    assert_eq!(sigma(&["decide", "bs12", "--xi", "1", "--coeff", "F4"]).status.code(), Some(1));
}

#[test]
fn window_comes_from_the_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_sigma"));
        cmd.args(["decide", "circle", "--xi", "1", "--retries", "0"]);
        match env {
            Some(w) => cmd.env("SIGMA_DEFAULT_WINDOW", w),
            None => cmd.env_remove("SIGMA_DEFAULT_WINDOW"),
        };
        cmd.output().unwrap()
    };
    assert_eq!(run(Some("6")).status.code(), Some(0));
    assert_eq!(run(Some("0")).status.code(), Some(1));
    assert_eq!(run(None).status.code(), Some(0));
}

#[test]
fn scan_writes_reports_that_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let table = dir.path().join("r.csv");
    let out = sigma(&["scan", "torus", "--jobs", "2", "--out", report.to_str().unwrap(), "--csv", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(&table).unwrap();
    assert!(csv.starts_with("xi_1,xi_2,k,ring,status\n"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",Yes")), "{csv}");

    let verify = sigma(&["verify", report.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    v["verdicts"][0]["certificate"]["homotopy"][0]["entries"][0]["terms"] = serde_json::json!([[[5, 5], 7]]);
    fs::write(&report, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(sigma(&["verify", report.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn movable_and_cat_bound() {
    let out = sigma(&["movable", "wedge-s1-s2", "--xi", "1", "--degree", "0", "--cell", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"Movable\""));
    let out = sigma(&["movable", "wedge-s1-s2", "--xi", "1", "--degree", "2", "--cycle", "[[[[0],1]]]", "--coeff", "Q"]);
    assert!(stdout(&out).contains("\"NotMovable\""));

    let out = sigma(&["cat-bound", "circle", "--xi", "-1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["category_bound"]["bound"], 0);
}

#[test]
fn dominate_writes_a_readable_complex() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("D.json");
    let out = sigma(&["dominate", "circle", "--k", "1", "--out", d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("H0=Z H1=0"));
    assert_eq!(sigma(&["validate", d.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(sigma(&["dominate", "bs12"]).status.code(), Some(1));
}

#[test]
fn examples_are_listed_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = sigma(&["examples", "--write", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["circle", "torus", "wedge-s1-s2", "trefoil", "bs12"] {
        let path = dir.path().join(format!("{name}.json"));
        assert_eq!(sigma(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
    }
}
