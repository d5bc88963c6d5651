use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn genbern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genbern")).args(args).output().expect("spawn genbern")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cubic_build_has_the_reversed_middle_nodes() {
    let out = genbern(&["build", "--f1", &fixture("cubic_s4.json"), "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let t: Vec<f64> = v["nodes"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!(t[0] == 0.0 && t[0] < t[2] && t[2] < t[1] && t[1] < t[3] && t[3] == 1.0, "{t:?}");
    assert_eq!(v["status"], "exists");
    assert_eq!(v["ordering"]["reversal_indices"], serde_json::json!([1]));
}

#[test]
fn rational_build_dumps_exact_coordinates() {
    let out = genbern(&["build", "--f1", &fixture("cubic_s4.json"), "--n", "3", "--mode", "rational"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["gamma_exact"], serde_json::json!(["0", "1/8", "1/12", "5/24"]));
}

#[test]
fn steep_cube_is_not_defined() {
    let out = genbern(&["build", "--f1", "(x-0.125)^3", "--interval", "0", "1", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "not_defined");
    assert!(v["offending_indices"].as_array().unwrap().contains(&Value::from(2)));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not defined"));
    let out = genbern(&["eval", "--f1", "(x-0.125)^3", "--n", "8", "--f", "e2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identity_scan() {
    let out = genbern(&["scan-n", "--f1", "identity", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["n_exist"], 1);
}

#[test]
fn negative_interval_endpoints_parse() {
    let out = genbern(&["build", "--f1", "x^3", "--interval", "-1", "1", "--n", "4", "--mode", "rational"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["gamma_exact"], serde_json::json!(["-1", "1/2", "0", "-1/2", "1"]));
}

#[test]
fn usage_errors_exit_one_and_name_the_field() {
    for args in [
        vec!["build", "--n", "3"],
        vec!["frobnicate"],
        vec!["build", "--f1", "x", "--n", "many"],
        vec!["build", "--f1", "x", "--interval", "1", "0", "--n", "3"],
        vec!["eval", "--f1", "x", "--n", "3", "--f", "cosh"],
        vec!["build", "--f1", "x", "--n", "501", "--mode", "rational"],
        vec!["build", "--f1", "1 - x", "--n", "3"],
    ] {
        let out = genbern(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = genbern(&["eval", "--f1", "x", "--n", "3", "--f", "cosh"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--f"));
    let out = genbern(&["build", "--f1", "x", "--n", "501", "--mode", "rational"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
    assert_eq!(genbern(&["--help"]).status.code(), Some(0));
}

#[test]
fn csv_carries_the_command_line_and_is_deterministic() {
    let args = ["deviation-study", "--f1", "random:5", "--seed", "7", "--n-grid", "6", "30", "8"];
    let first = genbern(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# genbern deviation-study --f1 random:5 --seed 7 --n-grid 6 30 8");
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.starts_with("n,status,max_node_deviation"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 4);
    assert_eq!(genbern(&args).stdout, first.stdout);
    let other_seed = genbern(&["deviation-study", "--f1", "random:5", "--seed", "8", "--n-grid", "6", "30", "8"]);
    assert_ne!(other_seed.stdout[60..], first.stdout[60..]);
}

#[test]
fn eval_reproduces_f1_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eval.csv");
    let out =
        genbern(&["eval", "--f1", "x^3 + x", "--n", "6", "--f", "f1", "--grid", "11", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(&path).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let err: f64 = row[3].parse().unwrap();
        assert!(err < 1e-12, "{row:?}");
    }
}

#[test]
fn sample_table_functions() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("f.csv");
    std::fs::write(&table, "x,y\n0,0\n0.5,1\n1,0\n").unwrap();
    let out = genbern(&["eval", "--f1", "x", "--n", "2", "--f", table.to_str().unwrap(), "--grid", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("0.5,0.5,1,")), "{text}");
}

#[test]
fn error_study_budget_dominates() {
    let out =
        genbern(&["error-study", "--f1", "x^3 + x", "--f", "abs(0.4)", "--n-grid", "8", "32", "8", "--grid", "513"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(&out.stdout[..]);
    for row in reader.records().map(Result::unwrap) {
        let (sup, budget): (f64, f64) = (row[2].parse().unwrap(), row[4].parse().unwrap());
        assert!(sup <= budget, "{row:?}");
    }
}

#[test]
fn convexity_of_the_quartic_image() {
    let out = genbern(&["convexity", "--f1", "x^3", "--interval", "-1", "1", "--f", "e4", "--n", "4", "--grid", "201"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["f"]["witness"].is_null());
    assert!(v["image"]["witness"]["det_value"].as_f64().unwrap() < -1e-6);
}

#[test]
fn reference_suite_passes() {
    let out = genbern(&["paper-examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS  cube on [-1,1], n = 4: coordinates"));
}
