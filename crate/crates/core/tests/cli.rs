use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudogauss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_catalog_entry_passes() {
    let o = pg(&["verify", "clifford_torus"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o.stdout);
    assert_eq!(r["passed"], true);
    assert_eq!(r["surface"]["source"], "catalog");
    assert_eq!(r["fit"]["verdict"], "one_type_through_origin");
    assert!((r["fit"]["lambda_p"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn out_file_and_summary_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = pg(&["verify", "marginally_trapped", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let line = String::from_utf8(o.stdout).unwrap();
    assert!(
        line.starts_with("marginally_trapped: PASS verdict=one_type_with_constant"),
        "{line}"
    );
    let r = json(&std::fs::read(&out).unwrap());
    assert_eq!(r["surface"]["name"], "marginally_trapped");
}

#[test]
fn chart_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let shown = pg(&["catalog", "show", "pr_clifford_torus", "--chart"]);
    assert_eq!(code(&shown), 0);
    let path = write(dir.path(), "pr.chart", &String::from_utf8(shown.stdout).unwrap());
    let o = pg(&["verify", &path, "--grid", "7x7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o.stdout);
    assert_eq!(r["surface"]["source"], "file");
    assert_eq!(r["grid"], serde_json::json!([7, 7]));
    assert!((r["fit"]["lambda_p"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_pseudogauss"))
            .args(["verify", "umbilical_boosted"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let a = run("1");
    assert!(!a.is_empty());
    assert_eq!(a, run("4"));
    assert_eq!(a, run("4"));
}

#[test]
fn coarse_step_is_a_check_failure() {
    let o = pg(&["verify", "clifford_torus", "--fd-step", "0.1"]);
    assert_eq!(code(&o), 1);
    let r = json(&o.stdout);
    assert_eq!(r["passed"], false);
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed: derivative_formula"));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_expr = write(
        dir.path(),
        "bad.chart",
        "dim 2\nsignature 4 0\ndomain 0 1 0 1\ncomponent cos[1,0;0]\ncomponent sin[1,0;0]\ncomponent frob(u)\ncomponent 0\n",
    );
    for args in [
        vec!["verify", "no_such_surface"],
        vec!["verify", "clifford_torus", "--grid", "2x2"],
        vec!["verify", "clifford_torus", "--grid", "9x9x9"],
        vec!["verify", "clifford_torus", "--margin", "0.7"],
        vec!["verify", "clifford_torus", "--tol-fd", "-1"],
        vec!["verify", "horosphere", "--n", "7"],
        vec!["verify", &bad_expr],
        vec!["catalog", "show", "nope"],
        vec!["verify"],
    ] {
        let o = pg(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn error_record_on_stderr() {
    let o = pg(&["verify", "no_such_surface"]);
    let line = String::from_utf8(o.stderr).unwrap();
    let r = json(line.trim().as_bytes());
    assert_eq!(r["error"]["kind"], "unknown_surface");
    assert_eq!(r["error"]["exit_code"], 2);
}

#[test]
fn degenerate_metric_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    // both coordinates collapse onto one circle
    let path = write(
        dir.path(),
        "strip.chart",
        "dim 2\nsignature 4 0\ndomain 0 1 0 1\ncomponent cos[1,0;0]\ncomponent sin[1,0;0]\ncomponent 0\ncomponent 0\n",
    );
    let o = pg(&["verify", &path]);
    assert_eq!(code(&o), 3);
    let r = json(String::from_utf8(o.stderr).unwrap().trim().as_bytes());
    assert_eq!(r["error"]["kind"], "degenerate_metric");
}

#[test]
fn horosphere_dimension_selector() {
    let o = pg(&["verify", "horosphere", "--n", "3", "--grid", "4x4x4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o.stdout);
    assert_eq!(r["surface"]["name"], "horosphere_3");
    assert_eq!(r["fit"]["verdict"], "biharmonic");
}

#[test]
fn suite_writes_every_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = pg(&["suite", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.contains("one-type sweep mismatches: 0"));
    let suite = json(&std::fs::read(dir.path().join("suite.json")).unwrap());
    let entries = suite["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 14);
    for e in entries {
        let name = e["name"].as_str().unwrap();
        let r = json(&std::fs::read(dir.path().join(format!("{name}.json"))).unwrap());
        assert_eq!(r["passed"], true, "{name}");
    }
}

#[test]
fn catalog_show_describes_entry() {
    let o = pg(&["catalog", "show", "chen_flat"]);
    assert_eq!(code(&o), 0);
    let d = json(&o.stdout);
    assert_eq!(d["name"], "chen_flat");
}
