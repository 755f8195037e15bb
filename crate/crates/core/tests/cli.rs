use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn arrmi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrmi")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn braid_file(dir: &Path, n: usize) -> PathBuf {
    let path = dir.join(format!("braid{n}.json"));
    let out = arrmi(&["braid", &n.to_string(), "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}

#[test]
fn lct_of_braid3() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 3);
    let out = arrmi(&["lct", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2/3");
}

#[test]
fn zero_lambda_is_unit_ideal() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 3);
    let out = arrmi(&["mi", f.to_str().unwrap(), "--lambda", "0/1"]);
    assert_eq!(stdout(&out).trim(), "(1)");
}

#[test]
fn braid10_lattice_json() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 10);
    let out = arrmi(&["lattice", f.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let flats: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(flats.len(), 115_975);
}

#[test]
fn user_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 3);
    let f = f.to_str().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim": 2, "hyperplanes": [{"normal": [0, 0]}]}"#).unwrap();

    assert_eq!(arrmi(&["lct", f, "--bogus"]).status.code(), Some(1));
    assert_eq!(arrmi(&["mi", f, "--lambda", "0.5"]).status.code(), Some(1));
    assert_eq!(arrmi(&["lct", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(arrmi(&["lct", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(arrmi(&["member", f, "--lambda", "1", "--poly", "x7"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 4);
    let f = f.to_str().unwrap();
    for args in [
        vec!["lattice", f],
        vec!["building", f, "--set", "full", "--json"],
        vec!["mi", f, "--lambda", "3/2"],
        vec!["jumps", f, "--max", "2"],
        vec!["resolution", f],
    ] {
        assert_eq!(stdout(&arrmi(&args)), stdout(&arrmi(&args)), "{args:?}");
    }
}

#[test]
fn help_states_the_formula() {
    let out = arrmi(&["mi", "--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("floor(lambda*s(W)) - r(W) + 1"));
}

#[test]
fn membership_and_jumps() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 3);
    let f = f.to_str().unwrap();
    let member = |poly: &str| stdout(&arrmi(&["member", f, "--lambda", "1", "--poly", poly]));
    assert_eq!(member("x0 - x1").trim(), "false");
    let paren = arrmi(&["member", f, "--lambda", "1", "--poly", "(x0 - x1)"]);
    assert_eq!(paren.status.code(), Some(1));
    assert_eq!(member("x0^3 - 3*x0^2*x1 + 3*x0*x1^2 - x1^3").trim(), "false");
    let prod = "x0^2*x1 - x0^2*x2 - x0*x1^2 + x0*x2^2 + x1^2*x2 - x1*x2^2";
    assert_eq!(member(prod).trim(), "true");

    let jumps = stdout(&arrmi(&["jumps", f, "--max", "1", "--verify", "--degree", "4"]));
    let lines: Vec<&str> = jumps.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("2/3 verified"));
    assert!(lines[1].starts_with("1 verified"));
}

#[test]
fn theorem_check_reports_equality() {
    let dir = TempDir::new().unwrap();
    let f = braid_file(dir.path(), 4);
    let out = arrmi(&["verify-theorem", f.to_str().unwrap(), "--lambda", "3/2", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("EQUAL up to degree 5"));
    let out = arrmi(&["building", f.to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(0));
}
