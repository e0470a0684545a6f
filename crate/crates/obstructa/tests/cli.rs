//! Binary-level tests: exit codes, report formats, the DIMACS re-parse
//! invariant, and byte-identical output across thread counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_obstructa"))
}

fn dataset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../datasets")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_and_exit_codes() {
    let ok = run(&["validate", dataset("ks3_peres57.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("57 rays"));

    let missing = run(&["validate", "/definitely/not/here.json"]);
    assert_eq!(missing.status.code(), Some(1));

    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dimension": 2, "field": "Q", "rays": [["1","0"],["1","1"]], "bases": [[0,1]]}"#,
    )
    .unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not orthogonal"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempdir();
    let syntactic = dir.join("syntax.json");
    std::fs::write(&syntactic, "{\n  \"dimension\": 2,\n  oops\n}").unwrap();
    let out = run(&["validate", syntactic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 3"), "missing position: {err}");

    let pointer = dir.join("pointer.json");
    std::fs::write(
        &pointer,
        r#"{"dimension": 2, "field": "Q", "rays": [["1","0"], ["1","x"]], "bases": [[0,1]]}"#,
    )
    .unwrap();
    let out = run(&["validate", pointer.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("/rays/1"), "missing JSON pointer: {err}");
}

#[test]
fn color_count_matches_known_examples() {
    let out = run(&[
        "color",
        dataset("basis3.json").to_str().unwrap(),
        "--count",
    ]);
    assert_eq!(stdout(&out).trim(), "3");

    let out = run(&[
        "color",
        dataset("shared_ray3.json").to_str().unwrap(),
        "--enumerate",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[5], "total 5");
    let mut sorted = lines[..5].to_vec();
    sorted.sort();
    assert_eq!(&lines[..5], sorted.as_slice(), "lexicographic order");

    let out = run(&[
        "color",
        dataset("ks4_ceg24.json").to_str().unwrap(),
        "--find",
    ]);
    assert_eq!(stdout(&out).trim(), "uncolorable");
}

#[test]
fn dimacs_round_trip_model_count() {
    let dir = tempdir();
    let cnf = dir.join("shared.cnf");
    let out = run(&[
        "color",
        dataset("shared_ray3.json").to_str().unwrap(),
        "--count",
        "--dimacs",
        cnf.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let count: u64 = stdout(&out).trim().parse().unwrap();
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.contains("c ray 0 = var 1"));
    let parsed = obstructa::boolean::parse_dimacs(&text).unwrap();
    let models = obstructa::boolean::enumerate_models(&parsed).len() as u64;
    assert_eq!(models, count);
    assert_eq!(models, 5);
}

#[test]
fn pipeline_json_shape_and_values() {
    let out = run(&[
        "pipeline",
        dataset("ks3_peres57.json").to_str().unwrap(),
        "--functor",
        "gelfand",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["colorings"], 0);
    assert_eq!(v["booleanColimitSize"], 1);
    assert_eq!(v["limitOpens"], 1);
    assert_eq!(v["limitPoints"], 0);
    assert_eq!(v["initial"], true);
    assert_eq!(v["functor"], "gelfand");
    assert!(v["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn pipeline_bytes_identical_across_threads() {
    let path = dataset("shared_ray3.json");
    let mut outputs = Vec::new();
    for threads in ["1", "2", "8"] {
        let out = run(&[
            "--threads",
            threads,
            "pipeline",
            path.to_str().unwrap(),
            "--functor",
            "stone",
            "--json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn env_var_thread_override() {
    let out = bin()
        .env("OBSTRUCTA_THREADS", "2")
        .args(&[
            "color",
            dataset("basis3.json").to_str().unwrap(),
            "--count",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(stdout(&out).trim(), "3");
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("obstructa-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
