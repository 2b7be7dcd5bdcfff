//! End-to-end checks of the command-line surface: JSON in, JSON/CSV out,
//! exit codes, and the audit plumbing.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_specscale"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().expect("binary runs")
}

fn json_out(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json output")
}

const MAJORIZED_PAIR: &str =
    r#"{"t": {"pairs": [[3, 0.5], [1, 0.5]]}, "s": {"pairs": [[2, 0.5], [2, 0.5]]}}"#;

#[test]
fn majorize_accepts_trace_scalar() {
    let v = json_out(&run(&["majorize"], MAJORIZED_PAIR));
    assert_eq!(v["majorizes"], serde_json::json!(true));
}

#[test]
fn majorize_exact_with_audit() {
    let v = json_out(&run(&["majorize", "--exact", "--audit"], MAJORIZED_PAIR));
    assert_eq!(v["majorizes"], serde_json::json!(true));
    assert!(v["audit"].as_str().unwrap().starts_with("ok"));
}

#[test]
fn majorize_weak_and_pointwise_modes() {
    let pair = r#"{"t": {"pairs": [[2, 0.5], [0, 0.5]]}, "s": {"pairs": [[1, 0.5], [0, 0.5]]}}"#;
    let v = json_out(&run(&["majorize", "--weak"], pair));
    assert_eq!(v["submajorizes"], serde_json::json!(true));
    let v = json_out(&run(&["majorize", "--pointwise"], pair));
    assert_eq!(v["dominates"], serde_json::json!(true));
    let out = run(&["majorize", "--weak", "--pointwise"], pair);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn majorize_csv_format() {
    let out = run(&["majorize", "--format", "csv"], MAJORIZED_PAIR);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "majorizes,true\n");
}

#[test]
fn dist_orbit_identical_is_zero_with_audit() {
    let pair = r#"{"t": {"breakpoints": [0, 0.5, 1], "values": [3, 1]},
                   "s": {"breakpoints": [0, 0.5, 1], "values": [3, 1]}}"#;
    let v = json_out(&run(&["dist", "orbit", "--audit"], pair));
    assert_eq!(v["distance"], serde_json::json!(0.0));
    assert!(v["audit"].as_str().unwrap().starts_with("ok"));
}

#[test]
fn dist_hull_emits_witness_and_round_trips() {
    let pair = r#"{"t": {"breakpoints": [0, 1], "values": [1]},
                   "s": {"pairs": [[2, 0.5], [0, 0.5]]}}"#;
    let v = json_out(&run(&["dist", "hull", "--witness", "--audit"], pair));
    assert_eq!(v["distance"], serde_json::json!(1.0));
    assert_eq!(v["witness"]["values"], serde_json::json!([1.0]));
    // Round trip: emitted JSON re-parses to equal values.
    let text = serde_json::to_string(&v).unwrap();
    let again: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, v);
}

#[test]
fn dist_hulls_and_spectral() {
    let pair = r#"{"t": {"pairs": [[3, 0.5], [1, 0.5]]}, "s": {"pairs": [[0, 1.0]]}}"#;
    let v = json_out(&run(&["dist", "hulls", "--exact", "--audit"], pair));
    assert_eq!(v["distance"], serde_json::json!(2.0));
    let spectra = r#"{"s": {"points": [[2, 0], [-1, 0]]}, "t": {"points": [[0, 0], [1, 0]]}}"#;
    let v = json_out(&run(&["dist", "spectral", "--audit"], spectra));
    assert_eq!(v["distance"], serde_json::json!(1.0));
}

#[test]
fn recursion_csv_trace_converges() {
    let out = run(&["recursion", "--p", "0.3", "--a", "1", "--b", "0", "--tol", "1e-6"], "");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,k_n,r_n,a_n,b_n");
    let first = lines.next().unwrap();
    assert!(first.starts_with("1,3,"), "first row: {first}");
    let last = text.lines().last().unwrap();
    let a_n: f64 = last.split(',').nth(3).unwrap().parse().unwrap();
    let b_n: f64 = last.split(',').nth(4).unwrap().parse().unwrap();
    assert!((a_n - 0.3).abs() < 1e-6 || (b_n - 0.3).abs() < 1e-6);
}

#[test]
fn recursion_json_format() {
    let out = run(
        &["recursion", "--p", "0.25", "--a", "2", "--b", "0", "--format", "json", "--exact"],
        "",
    );
    let v = json_out(&out);
    assert_eq!(v["steps"][0]["k_n"], serde_json::json!(4));
    assert_eq!(v["limit"], serde_json::json!(0.5));
}

#[test]
fn synth_plan_swap_average() {
    let mats = r#"{"t": {"n": 2, "re": [[3,0],[0,1]], "im": [[0,0],[0,0]]},
                   "s": {"n": 2, "re": [[2,0],[0,2]], "im": [[0,0],[0,0]]}}"#;
    let v = json_out(&run(&["synth", "plan", "--audit"], mats));
    let weights = v["weights"].as_array().unwrap();
    assert_eq!(weights.len(), 2);
    let sum: f64 = weights.iter().map(|w| w.as_f64().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-12);
}

#[test]
fn synth_pinch_and_contraction() {
    let v = json_out(&run(
        &["synth", "pinch", "--exact"],
        r#"{"a": 1, "b": 0, "w_a": 0.5, "w_b": 0.5, "t": 0.5}"#,
    ));
    assert_eq!(v["a"], serde_json::json!(0.75));
    assert_eq!(v["b"], serde_json::json!(0.25));

    let pair = r#"{"t": {"pairs": [[2, 0.5], [0, 0.5]]}, "s": {"pairs": [[1, 0.5], [0, 0.5]]}}"#;
    let v = json_out(&run(&["synth", "contraction", "--exact", "--audit"], pair));
    assert_eq!(v["gains"], serde_json::json!([0.5, 0.0]));
}

#[test]
fn pi_member_modes() {
    let inside = r#"{"s": {"points": [[0.5, 0]]}, "t": {"points": [[0, 0], [1, 0]]}}"#;
    let v = json_out(&run(&["pi", "member", "--audit"], inside));
    assert_eq!(v["member"], serde_json::json!(true));
    let outside = r#"{"s": {"points": [[0.5, 2]]}, "t": {"points": [[0, 0], [1, 0], [0, 1]]}}"#;
    let v = json_out(&run(&["pi", "member", "--normal"], outside));
    assert_eq!(v["member"], serde_json::json!(false));
}

#[test]
fn exit_codes_for_bad_inputs() {
    // Malformed JSON: validation, exit 2.
    let out = run(&["majorize"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    // Weight sum violation: validation, exit 2.
    let out = run(&["majorize"], r#"{"t": {"pairs": [[1, 0.4]]}, "s": {"pairs": [[1, 1.0]]}}"#);
    assert_eq!(out.status.code(), Some(2));
    // Reduction without majorization: domain, exit 3.
    let out = run(
        &["synth", "steps"],
        r#"{"t": {"pairs": [[1, 0.5], [0, 0.5]]}, "s": {"pairs": [[4, 0.5], [0, 0.5]]}}"#,
    );
    assert_eq!(out.status.code(), Some(3));
    // Submajorization failure: domain, exit 3.
    let out = run(
        &["synth", "contraction"],
        r#"{"t": {"pairs": [[1, 1.0]]}, "s": {"pairs": [[5, 1.0]]}}"#,
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join("specscale-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let path_str = path.to_str().unwrap();
    let out = run(&["majorize", "--output", path_str], MAJORIZED_PAIR);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["majorizes"], serde_json::json!(true));
    std::fs::remove_file(path).ok();
}
