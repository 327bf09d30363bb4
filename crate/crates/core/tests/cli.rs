use std::io::Write;
use std::process::Command;

use serde_json::{json, Value};

use rcpoly::cli::{run_with, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rcpoly").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (code, v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn poly_on_triangle() {
    let (code, v) = run_json(&["poly", "--graph6", "Bw", "--restraint", "1;1;1", "--check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["subcommand"], "poly");
    let row = &v["results"][0];
    assert_eq!(row["coeffs"], json!([-6, 11, -6, 1]));
    assert_eq!(row["threshold"], 1);
    assert_eq!(row["interpolation_agrees"], true);
    assert!(v["timing"]["elapsed_ms"].is_number());
    assert!(v["tool_version"].is_string());
}

#[test]
fn count_single_and_window() {
    let (code, v) = run_json(&["count", "--graph6", "Bw", "--restraint", "1;2;3", "--x", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["count"], 2);

    let (_, v) = run_json(&["count", "--graph6", "Bw", "--restraint", "1;2;1", "--x-window", "4:6"]);
    let counts: Vec<i64> = v["results"].as_array().unwrap().iter().map(|r| r["count"].as_i64().unwrap()).collect();
    // x^3 - 6x^2 + 13x - 10
    assert_eq!(counts, vec![10, 30, 68]);
}

#[test]
fn extremal_on_path() {
    let (code, v) = run_json(&["extremal", "--graph6", "Bg", "--direction", "max"]);
    assert_eq!(code, EXIT_OK);
    let report = &v["results"][0];
    assert_eq!(report["winners"].as_array().unwrap().len(), 1);
    assert_eq!(report["winners"][0]["is_alternating"], true);
}

#[test]
fn verify_theorem2_holds() {
    let (code, v) = run_json(&["verify", "theorem2", "--n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["holds"], true);
    assert_eq!(v["results"][0]["counterexamples"], json!([]));
}

#[test]
fn survey_with_wrong_expectation_is_a_counterexample() {
    let (code, v) = run_json(&["verify", "survey", "--max-n", "5", "--expect", "3"]);
    assert_eq!(code, EXIT_COUNTEREXAMPLE);
    assert_eq!(v["results"][0]["holds"], false);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["poly", "--graph6", "B"]).0, EXIT_USAGE);
    assert_eq!(run(&["poly"]).0, EXIT_USAGE);
    assert_eq!(run(&["poly", "--graph6", "Bw", "--restraint", "1;2"]).0, EXIT_USAGE);
    assert_eq!(run(&["count", "--graph6", "Bw", "--x", "3", "--x-window", "1:2"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "theorem1", "--n", "9"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    let (code, _, err) = run(&["--jobs", "0", "poly", "--graph6", "Bw"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--jobs"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = ["verify", "conjecture", "--max-n", "5"];
    let (_, one) = run_json(&[&["--jobs", "1"], &args[..]].concat());
    let (_, two) = run_json(&[&["--jobs", "2"], &args[..]].concat());
    assert_eq!(without_timing(one), without_timing(two));
}

#[test]
fn csv_and_text_formats() {
    let (code, out, _) = run(&["--format", "csv", "count", "--graph6", "Bw", "--restraint", "1;2;3", "--x-window", "3:4"]);
    assert_eq!(code, EXIT_OK);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "count").unwrap();
    let counts: Vec<String> = reader.records().map(|r| r.unwrap()[col].to_string()).collect();
    assert_eq!(counts, vec!["2", "11"]);

    let (code, out, _) = run(&["--format", "text", "poly", "--graph6", "Bw", "--restraint", "1;1;1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("poly\n"));
    assert!(out.contains("text: x^3 - 6x^2 + 11x - 6"));
}

#[test]
fn catalog_check_accepts_bundled_and_rejects_truncated() {
    let (code, v) = run_json(&["catalog-check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["graphs"], 143);
    assert_eq!(v["results"][0]["per_order"], json!([0, 1, 1, 2, 6, 21, 112]));

    let dir = std::env::temp_dir().join(format!("rcpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("short.g6");
    std::fs::write(&path, "@\nA_\nBg\n").unwrap();
    let (code, _, err) = run(&["catalog-check", "--graph6-file", path.to_str().unwrap(), "--max-n", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("order 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn edge_list_input() {
    let dir = std::env::temp_dir().join(format!("rcpoly-edges-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# four-cycle\n4\n0 1\n1 2\n2 3\n3 0").unwrap();
    drop(f);
    let (code, v) = run_json(&["poly", "--edges-file", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["coeffs"], json!([0, -3, 6, -4, 1]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rcpoly");
    let ok = Command::new(bin).args(["poly", "--graph6", "Bw"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["poly", "--graph6", "!!"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
    let fail = Command::new(bin).args(["verify", "survey", "--max-n", "4", "--expect", "1"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_COUNTEREXAMPLE));
}
