use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const X2_XY: &str = "ring p=32003 n=2\nsubmodule I\nx1^2, x1*x2\nend\n";
const QUARTIC: &str = "ring p=32003 n=4\nsubmodule R\nx2*x3 - x1*x4\nx3^3 - x2*x4^2\nx1*x3^2 - x2^2*x4\nx2^3 - x1^2*x3\nend\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_edepth"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all, stdin);
    let code = out.status.code().unwrap();
    (serde_json::from_slice(&out.stdout).unwrap_or(Value::Null), code)
}

#[test]
fn edepth_examples() {
    let (v, code) = json(&["edepth", "-"], X2_XY);
    assert_eq!(code, 0);
    assert_eq!((v["edepth"].as_u64(), v["depth"].as_u64(), v["sequentially_cm"].as_bool()), (Some(2), Some(0), Some(true)));
    let (v, _) = json(&["edepth", "-"], QUARTIC);
    assert_eq!((v["edepth"].as_u64(), v["depth"].as_u64()), (Some(0), Some(1)));
    let nonzero: Vec<u64> = v["ext"].as_array().unwrap().iter().filter(|e| e["zero"] == false).map(|e| e["i"].as_u64().unwrap()).collect();
    assert_eq!(nonzero, vec![2, 3]);
    let (v, _) = json(&["edepth", "-"], "ring p=32003 n=3\nsubmodule F\nshifts 0\nend\n");
    assert_eq!(v["edepth"].as_u64(), Some(3));
}

#[test]
fn table_export_schema_and_window() {
    let (v, code) = json(&["table", "-"], X2_XY);
    assert_eq!(code, 0);
    // Δ support is columns -1..1; two guard columns on each side.
    assert_eq!(v["lc"]["window"], serde_json::json!([-3, 3]));
    let row0 = &v["lc"]["rows"][0]["entries"];
    assert!(row0.as_array().unwrap().iter().any(|e| e == &serde_json::json!([1, 1])));
    assert_eq!(v["socle"]["rows"][1]["entries"], serde_json::json!([[-1, 1]]));
    let (v, _) = json(&["table", "-", "--window", "-1:0"], X2_XY);
    assert_eq!(v["delta"]["window"], serde_json::json!([-1, 0]));
    assert_eq!(v["lc"]["rows"][1]["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn csv_tables_are_aligned() {
    let out = run(&["table", "-", "--format", "csv"], X2_XY);
    let text = String::from_utf8(out.stdout).unwrap();
    let widths: Vec<usize> = text.lines().map(|l| l.split(',').count()).collect();
    assert!(widths.iter().all(|&w| w == widths[0]));
    assert!(text.starts_with("table,i,-3,"));
}

#[test]
fn gin_output_round_trips_through_the_grammar() {
    let out = run(&["gin", "-", "--t", "2"], X2_XY);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x1*x2") && text.contains("x1^2"));
    let again = run(&["edepth", "-", "--ring", "n=2"], &text);
    assert_eq!(again.status.code(), Some(0));
    let (v, _) = json(&["gin", "-", "--t", "1", "--seed", "9"], QUARTIC);
    assert_eq!(v["certificate"]["agreed"], true);
}

#[test]
fn verify_gin_reports() {
    let (v, code) = json(&["verify-gin", "-", "--t", "1"], QUARTIC);
    assert_eq!(code, 0);
    let r = &v["reports"][0];
    assert_eq!((r["lhs"].as_bool(), r["rhs"].as_bool(), r["consistent"].as_bool()), (Some(false), Some(false), Some(true)));
    let (v, _) = json(&["verify-gin", "-"], X2_XY);
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["lhs"] == true && r["rhs"] == true));
}

#[test]
fn decompose_exit_codes() {
    let (v, code) = json(&["decompose", "-"], X2_XY);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], true);
    assert_eq!(v["coefficients"]["S_rays"], serde_json::json!([[0, 1, 1, 1], [1, 0, 1, 1]]));
    let out = run(&["decompose", "-"], QUARTIC);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E-depth 0"));
}

#[test]
fn input_errors_exit_with_four() {
    assert_eq!(run(&["edepth", "-"], "ring p=32003 n=2\nsubmodule I\nx1^2, x1*\nend\n").status.code(), Some(4));
    assert_eq!(run(&["edepth", "/nonexistent/file"], "").status.code(), Some(4));
    assert_eq!(run(&["table", "-", "--window", "3:1"], X2_XY).status.code(), Some(4));
    assert_eq!(run(&["gin", "-", "--t", "5"], X2_XY).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(4));
    assert_eq!(run(&["edepth", "-", "--module", "J"], X2_XY).status.code(), Some(4));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn ring_flag_supplies_a_missing_header() {
    let body = "submodule I\nx1^2, x1*x2\nend\n";
    assert_eq!(run(&["edepth", "-"], body).status.code(), Some(4));
    let (v, code) = json(&["edepth", "-", "--ring", "p=32003,n=2"], body);
    assert_eq!((code, v["edepth"].as_u64()), (0, Some(2)));
}

#[test]
fn socle_fixtures() {
    let strict = "ring p=32003 n=2\nsubmodule A\nx1^2, x1*x2, x2^2\nend\nsubmodule B\nx1, x2\nend\nsubmodule C\nshifts 0\n1\nend\n";
    let (v, code) = json(&["socle", "-"], strict);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["verdict"], "hypothesis_unmet");
    let equal = "ring p=32003 n=2\nsubmodule A\nx1^2, x2\nend\nsubmodule B\nx1^2, x2\nend\n";
    let (v, code) = json(&["socle", "-"], equal);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["verdict"], "equal");
    assert_eq!(run(&["socle", "-"], X2_XY).status.code(), Some(4));
}

#[test]
fn corpus_is_reproducible_across_worker_counts() {
    let args = |jobs: &'static str| vec!["corpus", "--ring", "n=3", "--kind", "binomial", "--count", "12", "--seed", "5", "--jobs", jobs, "--format", "json"];
    let a = run(&args("1"), "");
    let b = run(&args("3"), "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 12);
}

#[test]
fn corpus_of_monomial_ideals_passes() {
    let (v, code) = json(&["corpus", "--ring", "n=3", "--kind", "monomial", "--count", "50", "--seed", "1"], "");
    assert_eq!(code, 0);
    assert_eq!(v["gin"]["checks"], v["gin"]["consistent"]);
    assert_eq!(v["gin"]["checks"].as_u64(), Some(200));
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn empty_corpus() {
    let (v, code) = json(&["corpus", "--count", "0", "--pairs", "0"], "");
    assert_eq!(code, 0);
    assert!(v["instances"].as_array().unwrap().is_empty());
    assert_eq!(v["gin"]["checks"].as_u64(), Some(0));
    assert_eq!(run(&["corpus", "--kind", "spheres"], "").status.code(), Some(4));
}

#[test]
fn toric_corpus_includes_non_sequentially_cm_instances() {
    let (v, code) = json(&["corpus", "--ring", "n=4", "--kind", "toric", "--count", "10", "--seed", "4", "--pairs", "2"], "");
    assert_eq!(code, 0);
    let skipped = v["decompose"]["skipped_edepth_too_small"].as_u64().unwrap();
    assert!(skipped > 0);
    assert!(v["gin"]["edepth_below_t"].as_u64().unwrap() > 0);
}
