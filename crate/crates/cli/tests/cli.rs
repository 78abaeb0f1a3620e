use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qmeasure::finite_space::{examples, from_destructive_pairs};
use qmeasure::io::table_to_json;
use serde_json::Value;
use tempfile::TempDir;

fn qmeasure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmeasure")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value_of(o: &Output) -> f64 {
    json(o)["value"].as_str().unwrap().parse().unwrap()
}

#[test]
fn integrate_destructive_identity() {
    let o = qmeasure(&["integrate", "--measure", "destructive:0.75", "--function", "x", "--domain", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((value_of(&o) - 0.4375).abs() < 1e-9);
    let v = json(&o);
    assert_eq!(v["measure"], "destructive:0.75");
    assert_eq!(v["function"], "x");
    assert!(v["evaluations"].as_u64().unwrap() > 0);
}

#[test]
fn integrate_constants_under_qlebesgue() {
    let o = qmeasure(&["integrate", "--measure", "qlebesgue", "--function", "const:1", "--domain", "0,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value_of(&o), 0.25);
    let o = qmeasure(&["integrate", "--measure", "qlebesgue", "--function", "const:0", "--domain", "0,1"]);
    assert_eq!(value_of(&o), 0.0);
}

#[test]
fn integrate_exact_mode_prints_rationals() {
    let o = qmeasure(&["integrate", "--measure", "destructive:3/4", "--function", "x", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], "7/16");
    let o = qmeasure(&["integrate", "--function", "indicator:0,1/2:1", "--exact", "--format", "csv"]);
    assert_eq!(stdout(&o), "value,error_estimate,evaluations,measure,function\n1/4,0,0,qlebesgue,\"indicator:0,1/2:1\"\n");
}

#[test]
fn integrate_exit_codes() {
    for args in [
        vec!["integrate", "--function", "sin"],
        vec!["integrate", "--function", "x", "--measure", "counting"],
        vec!["integrate", "--function", "x", "--domain", "0"],
        vec!["integrate", "--function", "x", "--domain", "0,2"],
        vec!["integrate", "--function", "x", "--tol", "0"],
        vec!["integrate", "--function", "exp", "--exact"],
        vec!["integrate", "--function", "x", "--measure", "destructive:0.1"],
    ] {
        let o = qmeasure(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
    let o = qmeasure(&["integrate", "--function", "exp", "--tol", "1e-30", "--budget", "200"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quadrature"));
}

#[test]
fn check_suites_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let coin = write(&dir, "coin.json", &table_to_json(&examples::quantum_coin()).to_string());
    let cube = write(&dir, "cube.json", &table_to_json(&examples::cube_table(3)).to_string());
    let pairs = write(&dir, "pairs.json", &table_to_json(&from_destructive_pairs::<qmeasure::Rational>(1, 1).unwrap()).to_string());

    let o = qmeasure(&["check", "--input", path(&coin), "--suite", "grade2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);

    let o = qmeasure(&["check", "--input", path(&cube), "--suite", "grade2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("grade2: FAIL"));
    assert!(stdout(&o).contains("witness:"));

    let o = qmeasure(&["check", "--input", path(&pairs), "--suite", "regularity", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("regular=true completely_regular=false"));

    let o = qmeasure(&["check", "--input", path(&coin), "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["reports"].as_array().unwrap().len(), 7);
}

#[test]
fn check_matrix_input() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "d.json", r#"{"matrix":[[1,{"re":0,"im":"1/2"}],[{"re":0,"im":"-1/2"},1]]}"#);
    let o = qmeasure(&["check", "--input", path(&good), "--suite", "decoherence,grade2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["reports"].as_array().unwrap().len(), 2);

    let bad = write(&dir, "bad.json", r#"{"matrix":[[1,{"re":0,"im":"1/2"}],[{"re":0,"im":"1/2"},1]]}"#);
    let o = qmeasure(&["check", "--input", path(&bad), "--suite", "decoherence", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("hermitian"));
}

#[test]
fn check_rejects_malformed_input() {
    let dir = TempDir::new().unwrap();
    let missing = write(&dir, "m.json", r#"{"universe":["a","b"],"values":[{"set":[],"mu":0},{"set":[0],"mu":1}]}"#);
    let garbage = write(&dir, "g.json", "{not json");
    let coin = write(&dir, "coin.json", &table_to_json(&examples::quantum_coin()).to_string());
    for args in [
        vec!["check", "--input", path(&missing)],
        vec!["check", "--input", path(&garbage)],
        vec!["check", "--input", "/nonexistent/file.json"],
        vec!["check", "--input", path(&coin), "--suite", "bogus"],
        vec!["check", "--input", path(&coin), "--suite", "decoherence"],
    ] {
        assert_eq!(qmeasure(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn demos_report_verdicts() {
    let o = qmeasure(&["demo", "quantum-coin"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o)["demos"][0]["rows"].clone();
    let heads = rows.as_array().unwrap().iter().find(|r| r["quantity"] == "int heads dmu").unwrap();
    assert_eq!(heads["computed"], "5/8");
    assert_eq!(heads["verdict"], "match");

    let o = qmeasure(&["demo", "grade2-integral-gap", "--format", "text"]);
    assert!(stdout(&o).contains("left vs right: 5/4 vs 3/2: mismatch-as-expected"));

    let o = qmeasure(&["demo", "radon-nikodym", "--format", "text"]);
    assert!(stdout(&o).contains("2 vs 1: mismatch-as-expected"));
    assert!(stdout(&o).contains("grid densities reproducing nu: 0 vs 0: match"));

    let o = qmeasure(&["demo", "all", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).lines().any(|l| l.ends_with(",mismatch")));

    assert_eq!(qmeasure(&["demo", "unknown"]).status.code(), Some(2));
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn monomial_sweep_matches_closed_form() {
    let o = qmeasure(&["table", "monomial", "--n", "0..6", "--y", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["n", "y", "computed", "closed_form", "abs_error"]);
    assert_eq!(rows.len(), 8);
    for r in &rows[1..] {
        let err: f64 = r[4].parse().unwrap();
        assert!(err <= 1e-6, "{r:?}");
    }
}

#[test]
fn ftc_sweep_error_shrinks_with_step() {
    let o = qmeasure(&["table", "ftc", "--function", "x^2", "--h", "1e-1,1e-2,1e-3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let errors: Vec<f64> = csv_rows(&o)[1..].iter().map(|r| r[5].parse().unwrap()).collect();
    assert_eq!(errors.len(), 3);
    assert!(errors[0] > 10.0 * errors[1] && errors[1] > 10.0 * errors[2], "{errors:?}");
}

#[test]
fn empty_sweep_is_header_only() {
    let o = qmeasure(&["table", "monomial", "--n", "", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,y,computed,closed_form,abs_error\n");
    assert_eq!(qmeasure(&["table", "monomial", "--n", "a..b"]).status.code(), Some(2));
    assert_eq!(qmeasure(&["table", "ftc", "--y", "0.05"]).status.code(), Some(2));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let coin = write(&dir, "coin.json", &table_to_json(&examples::quantum_coin()).to_string());
    for args in [
        vec!["integrate", "--function", "exp", "--measure", "destructive:0.6"],
        vec!["check", "--input", path(&coin), "--suite", "all", "--seed", "7"],
        vec!["table", "exp", "--format", "csv"],
        vec!["demo", "ftc"],
    ] {
        assert_eq!(qmeasure(&args).stdout, qmeasure(&args).stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("coin.json");
    let o = qmeasure(&["export", "quantum-coin", "--output", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = qmeasure(&["check", "--input", path(&out), "--suite", "grade2,regularity"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(qmeasure(&["export", "nothing"]).status.code(), Some(2));
}
