// SPDX-License-Identifier: MIT OR Apache-2.0
//! End-to-end checks of the `bklkit` binary: outputs, exit codes, and cache.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn bklkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bklkit"))
        .args(args)
        .env_remove("BKLKIT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dual_rank_two_column_is_geometric() {
    let o = bklkit(&[
        "bkl",
        "--seq",
        "01",
        "--f",
        "3,3",
        "--kind",
        "dual",
        "--window",
        "6",
        "--format",
        "json",
        "--no-cache",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let col = v["column"].as_array().unwrap();
    assert_eq!(col.len(), 10);
    // Entry at (3-t, 3-t) is (-q)^{-t}.
    for (t, e) in col.iter().enumerate() {
        let a = 3 - t as i64;
        assert_eq!(e["g"], format!("{a},{a}"));
        let sign = if t % 2 == 0 { 1 } else { -1 };
        assert_eq!(e["poly"][(-(t as i64)).to_string()], sign);
    }
}

#[test]
fn canonical_columns() {
    let o = bklkit(&["bkl", "--seq", "0", "--f", "5", "--kind", "canonical", "--no-cache"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["column"].as_array().unwrap().len(), 1);
    let o = bklkit(&[
        "bkl",
        "--seq",
        "00",
        "--f",
        "2,1",
        "--kind",
        "canonical",
        "--format",
        "csv",
        "--no-cache",
    ]);
    assert_eq!(stdout(&o), "g,lowest_exponent,coefficients\n\"2,1\",0,1\n\"1,2\",1,1\n");
}

#[test]
fn characters() {
    let o = bklkit(&["char", "--seq", "01", "--lambda", "0,0", "--kind", "tilt", "--no-cache"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let o = bklkit(&[
        "char",
        "--seq",
        "01",
        "--lambda",
        "2,-1",
        "--kind",
        "irr",
        "--format",
        "tex",
        "--no-cache",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\\begin{tabular}"));
}

#[test]
fn exit_codes() {
    assert_eq!(bklkit(&["bkl", "--seq", "0x", "--f", "1"]).status.code(), Some(2));
    assert_eq!(bklkit(&["bkl", "--seq", "01", "--f", "1"]).status.code(), Some(2));
    assert_eq!(bklkit(&["bkl", "--seq", "01"]).status.code(), Some(2));
    assert_eq!(bklkit(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(bklkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = bklkit(&["verify", "--suite", "rank2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS rank2"));
    let o = bklkit(&["verify", "--suite", "adjacency", "--max-rank", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let start = Instant::now();
    let o = bklkit(&["verify", "--suite", "all", "--max-rank", "2", "--max-window", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert!(start.elapsed() < Duration::from_secs(60));
}

#[test]
fn cache_env_override_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bklkit"))
            .args(["bkl", "--seq", "0101", "--f", "1,1,0,0", "--kind", "dual"])
            .env("BKLKIT_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let files: Vec<_> = walk(dir.path());
    assert_eq!(files.len(), 1);
    let cached = std::fs::read_to_string(&files[0]).unwrap();
    assert_eq!(stdout(&first).trim_end(), cached.trim_end());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}

fn walk(p: &std::path::Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(p).unwrap() {
        let path = e.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}
