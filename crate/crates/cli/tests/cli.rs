use std::path::PathBuf;
use std::process::{Command, Output};

use orp_core::{check_unique_bstable, DenseSimplex, InstanceFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orp"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str], file: &PathBuf) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_values(o: &Output) -> Vec<(String, String, f64)> {
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    doc["estimates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["method"].as_str().unwrap().to_string(),
                e["target"].as_str().unwrap().to_string(),
                e["value"].as_f64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn example1_oracle() {
    let out = bin()
        .args(["solve", "--method", "oracle", "--format", "json"])
        .arg(data("example1.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let vals = json_values(&out);
    assert_eq!(vals.len(), 2);
    assert!((vals[0].2 - 36.0).abs() < 1e-6);
    assert!((vals[1].2 - 81.0).abs() < 1e-6);
}

#[test]
fn example2_value_range() {
    let out = bin()
        .args(["solve", "--method", "oracle", "--value-range"])
        .arg(data("example2.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value range: [-20, infeasible]"), "{text}");
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("oracle")).collect();
    assert!(lines[0].contains("f_lower") && lines[0].contains(" -20 "));
    assert!(lines[1].contains("f_upper") && lines[1].contains(" 0 "));
}

#[test]
fn example3_all_methods_agree() {
    let out = run(&["solve", "--format", "json"], &data("example3.json"));
    assert!(out.status.success());
    let vals = json_values(&out);
    assert_eq!(vals.len(), 10);
    assert!(vals.iter().all(|(_, _, v)| v.abs() < 1e-6), "{vals:?}");
}

#[test]
fn target_selection() {
    let out = run(
        &[
            "solve",
            "--method",
            "local-search",
            "--target",
            "max",
            "--format",
            "json",
        ],
        &data("example1.json"),
    );
    let vals = json_values(&out);
    assert_eq!(vals.len(), 1);
    assert_eq!(vals[0].1, "f_upper");
    assert!((vals[0].2 - 81.0).abs() < 1e-6);
}

#[test]
fn csv_format() {
    let out = run(
        &["solve", "--method", "exact", "--format", "csv"],
        &data("transportation.json"),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "method,target,direction,value,elapsed_seconds,witness,error"
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("exact,f_lower,exact,3940,"));
    assert!(lines
        .next()
        .unwrap()
        .starts_with("exact,f_upper,exact,4056,"));
}

#[test]
fn output_order_ignores_job_count() {
    let a = run(&["--jobs", "1", "solve"], &data("transportation.json"));
    let b = run(&["--jobs", "4", "solve"], &data("transportation.json"));
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["solve"], &bad).status.code(), Some(1));

    let mut f = InstanceFile::read(&data("example1.json")).unwrap();
    f.c.push(1.0);
    let mismatch = dir.path().join("mismatch.json");
    f.write(&mismatch).unwrap();
    let out = run(&["solve"], &mismatch);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c has 3 entries"));

    let out = run(&["solve", "--method", "exact"], &data("example2.json"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact"));

    let out = run(
        &["solve", "--method", "local-search", "--ls-q", "0,2"],
        &data("example1.json"),
    );
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(
        bin().arg("--bogus").output().unwrap().status.code(),
        Some(1)
    );
}

#[test]
fn generate_class1_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let out = bin()
        .args([
            "generate", "--class", "1", "--m", "10", "--n", "15", "--delta", "0.1", "--seed", "7",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let (inst, _) = InstanceFile::read(&path).unwrap().to_instance().unwrap();
    assert_eq!((inst.m(), inst.n()), (10, 15));
    assert!(check_unique_bstable(&DenseSimplex::new(), &inst)
        .unwrap()
        .is_some());

    let again = bin()
        .args([
            "generate", "--class", "1", "--m", "10", "--n", "15", "--delta", "0.1", "--seed", "7",
        ])
        .output()
        .unwrap();
    assert_eq!(again.stdout, std::fs::read(&path).unwrap());
}

#[test]
fn bench_three_cells() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bench.json");
    std::fs::write(
        &config,
        r#"{
  "cells": [
    {"m": 3, "n": 5, "delta": 0.1, "class": "class1"},
    {"m": 4, "n": 6, "delta": 0.1, "class": "class1"},
    {"m": 5, "n": 7, "delta": 0.1, "class": "class1"}
  ],
  "methods": ["exact", "local-search"],
  "repetitions": 2
}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = bin()
        .arg("bench")
        .arg(&config)
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let agg = std::fs::read_to_string(out_dir.join("aggregate.csv")).unwrap();
    let rows: Vec<&str> = agg.lines().skip(1).collect();
    assert_eq!(rows.len(), 3 * 2 * 2);
    for method in ["exact", "local-search"] {
        for target in ["f_lower", "f_upper"] {
            let tag = format!(",{method},{target},");
            assert_eq!(rows.iter().filter(|r| r.contains(&tag)).count(), 3);
        }
    }
    let records = std::fs::read_to_string(out_dir.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 1 + 3 * 2 * 2 * 2);
}

#[test]
fn bench_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bench.json");
    std::fs::write(&config, r#"{"cells": [], "methods": ["nope"]}"#).unwrap();
    let out = bin()
        .arg("bench")
        .arg(&config)
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
