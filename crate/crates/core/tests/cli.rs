//! Drives the `clusterkit` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterkit")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const GEM: &str = "0 1\n1 2\n2 3\n4 0\n4 1\n4 2\n4 3\n";

#[test]
fn solve_json_reports_validity() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.el", GEM);
    let out = run(&["solve", "--input", &g, "--algorithm", "reduce25", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["witnesses"][0]["kind"], "gem");
}

#[test]
fn exact_on_gem_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.el", GEM);
    let out = run(&["exact", "--input", &g, "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["size"], 2);
}

#[test]
fn verify_sets_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.el", GEM);
    let good = write(dir.path(), "good.txt", "4 1\n");
    let bad = write(dir.path(), "bad.txt", "0\n");
    assert!(run(&["verify", "--input", &g, "--solution", &good]).status.success());
    assert_eq!(run(&["verify", "--input", &g, "--solution", &bad]).status.code(), Some(1));
}

#[test]
fn weights_feed_the_dissociation_solver() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.el", "a b\nb c\n");
    let w = write(dir.path(), "w.txt", "b 10\n");
    let out = run(&["exact", "--input", &g, "--weights", &w, "--problem", "dissociation", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["weight"], 1.0);
    assert_eq!(doc["deleted"], serde_json::json!(["a"]));
}

#[test]
fn gen_is_deterministic_and_parsable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.el").display().to_string();
    let b = dir.path().join("b.el").display().to_string();
    for path in [&a, &b] {
        assert!(run(&["gen", "--model", "planted", "--seed", "3", "--out", path]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(run(&["solve", "--input", &a]).status.success());
}

#[test]
fn bench_writes_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = ["r1.json", "r2.json"].iter().map(|n| dir.path().join(n).display().to_string()).collect();
    for p in &paths {
        let out = run(&["bench", "--suite", "random-medium", "--seeds", "3", "--deterministic", "--out", p]);
        assert!(out.status.success());
    }
    let first = std::fs::read(&paths[0]).unwrap();
    assert_eq!(first, std::fs::read(&paths[1]).unwrap());
    let doc: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(doc["failures"], 0);
}

#[test]
fn usage_errors_fail() {
    assert!(!run(&["frobnicate"]).status.success());
    assert!(!run(&["solve", "--input", "x", "--algorithm", "magic"]).status.success());
    assert_eq!(run(&["solve", "--input", "/nonexistent/g.el"]).status.code(), Some(2));
}
