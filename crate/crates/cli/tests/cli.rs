use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn k3wall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3wall")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn worked_certificate_passes() {
    let out = k3wall(&["certify-restriction", "--d-prime", "10", "--vector", "3,-1,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["params"]["b3"], "-5/6");
    assert_eq!(v["params"]["w4_bound"], "23/18");
}

#[test]
fn failing_and_inapplicable_certificates_exit_one() {
    let out = k3wall(&["certify-restriction", "--d-prime", "1", "--vector", "2,-1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "fail");
    let out = k3wall(&["certify-restriction", "--d-prime", "10", "--vector", "1,-1,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "inapplicable");
}

#[test]
fn lm_reports_first_failing_flag() {
    let out = k3wall(&["lm", "--g", "7", "--d", "7", "--sections", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["first_failure"], "con.3");
    assert_eq!(v["vector"], serde_json::json!([3, [-1], 2]));

    let out = k3wall(&["lm", "--g", "11", "--d", "10", "--sections", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mercat"]["oracle_counterexample"], true);
    assert_eq!(v["certificate"]["verdict"], "pass");
}

#[test]
fn roots_lists_ten() {
    let out = k3wall(&["roots", "--d-prime", "1", "--bound", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 10);
    assert_eq!(v["roots"].as_array().unwrap().len(), 10);
    assert_eq!(v["root_bound"], 2);
}

#[test]
fn default_root_bound_is_echoed() {
    let out = k3wall(&["ml-certify", "--d-prime", "1", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["root_bound"], 20);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    for args in [
        vec!["roots", "--d-prime", "0"],
        vec!["roots", "--d-prime", "-3"],
        vec!["roots", "--unknown-flag"],
        vec!["certify-restriction", "--d-prime", "10", "--vector", "3,-1"],
        vec!["certify-restriction", "--vector", "3,-1,3"],
        vec!["plot", "--d-prime", "1", "--kind", "nope", "--out", "/dev/null"],
    ] {
        let out = k3wall(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr_line(&out);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn decimal_mode() {
    let out = k3wall(&["certify-restriction", "--d-prime", "10", "--vector", "3,-1,3", "--decimal"]);
    let v = json(&out);
    assert_eq!(v["params"]["b1"], "-0.333333333");
    assert_eq!(v["params"]["w3_sq_times_dprime"], "2.388888889");
}

#[test]
fn config_file_surface() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("x.toml");
    fs::write(&cfg, "d_prime = 10\nroot_bound = 3\n").unwrap();
    let out = k3wall(&["certify-restriction", "--config", cfg.to_str().unwrap(), "--vector", "3,-1,3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = k3wall(&["roots", "--config", cfg.to_str().unwrap()]);
    assert_eq!(json(&out)["root_bound"], 3);

    fs::write(&cfg, "gram = [[2, 0], [0, -2]]\n").unwrap();
    let out = k3wall(&["pairing", "--config", cfg.to_str().unwrap(), "--v", "0,[0,1],0", "--w", "0,[0,1],0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pairing"], -2);

    fs::write(&cfg, "d_prime = 2\ngram = [[2]]\n").unwrap();
    assert_eq!(k3wall(&["roots", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&cfg, "d_prim = 2\n").unwrap();
    let out = k3wall(&["roots", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).contains("d_prim"));
}

#[test]
fn scan_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_json = dir.path().join("scan.json");
    let out_csv = dir.path().join("scan.csv");
    let out = k3wall(&[
        "mercat-scan", "--g-max", "10", "--rank-max", "3",
        "--out", out_json.to_str().unwrap(), "--csv", out_csv.to_str().unwrap(), "--jobs", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    assert_eq!(report["agreement"]["mismatches"], serde_json::json!([[2, 6, 6], [2, 9, 10]]));
    let csv = fs::read_to_string(&out_csv).unwrap();
    assert_eq!(csv.lines().count(), report["instances"].as_array().unwrap().len() + 1);

    let single = dir.path().join("single.json");
    k3wall(&["mercat-scan", "--g-max", "10", "--rank-max", "3", "--out", single.to_str().unwrap(), "--jobs", "1"]);
    assert_eq!(fs::read(&single).unwrap(), fs::read(&out_json).unwrap());
}

#[test]
fn plot_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("f.svg");
    let svg_s = svg.to_str().unwrap();
    let out = k3wall(&["plot", "--d-prime", "10", "--kind", "theorem_path", "--vector", "3,-1,3", "--out", svg_s]);
    assert_eq!(out.status.code(), Some(0));
    let out = k3wall(&["plot", "--d-prime", "1", "--kind", "ml_triangle", "--out", svg_s]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&svg).unwrap().matches("<polygon").count(), 1);
    let out = k3wall(&["plot", "--d-prime", "1", "--kind", "holes", "--bound", "2", "--out", svg_s, "--dump-scene"]);
    let scene = json(&out);
    assert_eq!(scene["samples"], 128);
    let out = k3wall(&["plot", "--d-prime", "10", "--kind", "theorem_path", "--vector", "1,-1,3", "--out", svg_s]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn project_reports_central_charge() {
    let out = k3wall(&["project", "--d-prime", "10", "--vector", "3,-1,3", "--b", "-5/6", "--w-sq", "43/180"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pr"], serde_json::json!(["-1/3", "1"]));
    assert_eq!(v["sigma"]["k"], serde_json::json!(["-5/56", "3/28"]));
}
