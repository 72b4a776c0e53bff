use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn bb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_border-basis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn temp_input(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn five_point_verifies() {
    let out = bb(&["--input", &fixture("five_point.txt"), "--marking", "explicit", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: success"));
    assert!(text.contains("[x*y]  x^2 + x*y - 1/2*y^2 - x - 1/2*y"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verified"));
}

#[test]
fn five_point_json_shape() {
    let out = bb(&["--input", &fixture("five_point.txt"), "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["status"], "success");
    assert_eq!(v["order_ideal"].as_array().unwrap().len(), 5);
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    assert_eq!(v["border"].as_array().unwrap().len(), 5);
    assert_eq!(v["order_ideal"][0], serde_json::json!([0, 0]));
    // y^3 - y: coefficients as fractions, terms as exponent arrays
    let first = &v["basis"][0];
    assert_eq!(first["marked_term"], serde_json::json!([0, 3]));
    assert_eq!(first["polynomial"], serde_json::json!([[[0, 1], "-1/1"], [[0, 3], "1/1"]]));
}

#[test]
fn too_small_stops_then_exhausts() {
    let out = bb(&["--input", &fixture("too_small.txt"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "stopped_at_T7");
    assert_eq!(v["diagnostics"]["offending_terms"], serde_json::json!([[1, 2]]));
    assert_eq!(v["diagnostics"]["order_ideal_core"].as_array().unwrap().len(), 5);

    let out = bb(&["--input", &fixture("too_small.txt"), "--backtrack", "1000", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "marking_admits_no_border_basis");
}

#[test]
fn backtrack_flag_without_budget() {
    let out = bb(&["--input", &fixture("too_small.txt"), "--backtrack", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "marking_admits_no_border_basis");
}

#[test]
fn iteration_limit_exits_3() {
    let out = bb(&["--input", &fixture("shape.txt"), "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(3));

    // positive dimensional: only x is bounded
    let f = temp_input("vars: x y\nx^2 - x\n");
    let out = bb(&["--input", f.path().to_str().unwrap(), "--max-iter", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "iteration_limit");
}

#[test]
fn bad_input_exits_1() {
    let f = temp_input("vars: x y\nx^2 + q\n");
    let out = bb(&["--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:7: unknown variable `q`"), "{err}");
    assert!(out.stdout.is_empty());

    // explicit marking needs an annotation on every line
    let f = temp_input("vars: x y\nx^2 - y @ x^2\ny^2 - x\n");
    let out = bb(&["--input", f.path().to_str().unwrap(), "--marking", "explicit"]);
    assert_eq!(out.status.code(), Some(1));

    // a marked term must have maximal degree
    let f = temp_input("vars: x y\nx^2 - y @ y\n");
    let out = bb(&["--input", f.path().to_str().unwrap(), "--marking", "explicit"]);
    assert_eq!(out.status.code(), Some(1));

    let out = bb(&["--input", "/nonexistent/problem.txt"]);
    assert_eq!(out.status.code(), Some(1));

    let out = bb(&["--input", &fixture("shape.txt"), "--enum", "explicit"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_output_is_deterministic() {
    for name in ["five_point.txt", "three_var.txt", "too_small.txt", "shape.txt"] {
        let a = bb(&["--input", &fixture(name), "--format", "json"]);
        let b = bb(&["--input", &fixture(name), "--format", "json"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn verify_only_changes_exit_code() {
    let args = ["--input", &fixture("three_var.txt"), "--format", "json"];
    let plain = bb(&args);
    let mut with = args.to_vec();
    with.push("--verify");
    let verified = bb(&with);
    assert_eq!(plain.stdout, verified.stdout);
    assert_eq!(verified.status.code(), Some(0));
}

#[test]
fn marking_and_enumeration_flags_override_the_file() {
    let out = bb(&["--input", &fixture("five_point.txt"), "--marking", "deglex", "--enum", "deglex", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    // DegLex leading terms: O is the DegLex quotient basis {1, x, y, xy, y^2}
    assert_eq!(
        json(&out)["order_ideal"],
        serde_json::json!([[0, 0], [0, 1], [0, 2], [1, 0], [1, 1]])
    );
}

#[test]
fn choice_log_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("choices.json");
    let out = bb(&["--input", &fixture("three_var.txt"), "--log-choices", log.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&log).unwrap()).unwrap();
    assert!(v.is_array());
    for entry in v.as_array().unwrap() {
        assert!(entry["candidates"].as_array().unwrap().len() >= 2);
    }
}

#[test]
fn debug_tracing_goes_to_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_border-basis"))
        .args(["--input", &fixture("five_point.txt")])
        .env("BB_LOG", "debug")
        .output()
        .unwrap();
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("T1"), "{err}");
    assert!(err.contains("T9"), "{err}");
    assert!(!String::from_utf8_lossy(&out.stdout).contains("T1:"));
}

#[test]
fn backtracking_finds_a_basis() {
    let out = bb(&["--input", &fixture("backtrack.txt")]);
    assert_eq!(out.status.code(), Some(2));
    let out = bb(&["--input", &fixture("backtrack.txt"), "--backtrack", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bb(&["--input", &fixture("backtrack.txt"), "--backtrack", "--verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["order_ideal"], serde_json::json!([[0, 0], [1, 0], [2, 0]]));
}
