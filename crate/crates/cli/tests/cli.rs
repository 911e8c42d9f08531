use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn tvcode(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tvcode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn file(suffix: &str, content: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

const HALVING4: &str =
    r#"{"probabilities": [0.5333333333333333, 0.26666666666666666, 0.13333333333333333, 0.06666666666666667]}"#;

#[test]
fn design_halving_example() {
    let f = file(".json", HALVING4);
    let v = json(&tvcode(
        &[
            "design",
            "--input",
            f.path().to_str().unwrap(),
            "--alpha",
            "0.0666666666666667",
        ],
        "",
    ));
    assert!(close(
        &floats(&v["weights"]),
        &[7.0 / 15.0, 4.0 / 15.0, 2.0 / 15.0, 2.0 / 15.0],
        1e-11
    ));
    assert_eq!(floats(&v["integer_lengths"]), vec![2.0, 2.0, 3.0, 3.0]);
    assert_eq!(v["alpha_max"].as_f64(), Some(0.3));
    assert_eq!(v["kraft_sum_integer"].as_f64(), Some(0.75));
    let h = v["entropy_of_weights"].as_f64().unwrap();
    assert!((v["worst_case_average_length"].as_f64().unwrap() - h).abs() < 1e-11);
}

#[test]
fn zero_radius_gives_shannon_lengths() {
    let v = json(&tvcode(&["design", "--radius", "0"], "0.5\n0.25\n0.125\n0.125\n"));
    assert_eq!(floats(&v["real_lengths"]), vec![1.0, 2.0, 3.0, 3.0]);
    assert_eq!(floats(&v["weights"]), vec![0.5, 0.25, 0.125, 0.125]);
}

#[test]
fn caller_order_is_preserved() {
    let permuted = r#"{"probabilities": [0.13333333333333333, 0.5333333333333333, 0.06666666666666667, 0.26666666666666666], "symbols": ["c", "a", "d", "b"]}"#;
    let v = json(&tvcode(&["design", "--alpha", "0.2"], permuted));
    let sorted = json(&tvcode(&["design", "--alpha", "0.2"], HALVING4));
    let w = floats(&v["weights"]);
    let ws = floats(&sorted["weights"]);
    assert!(close(&w, &[ws[2], ws[0], ws[3], ws[1]], 0.0));
    assert_eq!(v["symbols"][1], "a");
    assert_eq!(v["groups"][1], "top");
}

#[test]
fn weights_round_trip_through_zero_radius() {
    let v = json(&tvcode(&["design", "--alpha", "0.15", "--precision", "17"], HALVING4));
    let weights = floats(&v["weights"]);
    let input = serde_json::json!({ "probabilities": weights }).to_string();
    let again = json(&tvcode(&["design", "--radius", "0", "--precision", "17"], &input));
    assert!(close(
        &floats(&again["real_lengths"]),
        &floats(&v["real_lengths"]),
        1e-9
    ));
    assert_eq!(again["integer_lengths"], v["integer_lengths"]);
}

#[test]
fn base_three() {
    let v = json(&tvcode(&["design", "--alpha", "0.3", "--base", "3"], HALVING4));
    let expected = 4f64.ln() / 3f64.ln();
    assert!(floats(&v["real_lengths"]).iter().all(|l| (l - expected).abs() < 1e-11));
    assert_eq!(floats(&v["integer_lengths"]), vec![2.0; 4]);
}

#[test]
fn malformed_input_exits_2() {
    let out = tvcode(&["design"], "{\"probabilities\": [0.5,");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: input:"));

    let out = tvcode(&["design"], r#"{"probabilities": [0.5, 0.0, 0.5]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("probabilities[1]"));

    let out = tvcode(&["design"], r#"{"probabilities": [0.5, 0.6]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_2() {
    for args in [
        &["design", "--radius", "0.1", "--alpha", "0.05"][..],
        &["design", "--radius", "2.5"],
        &["design", "--alpha", "-0.1"],
        &["design", "--base", "1"],
        &["design", "--precision", "0"],
    ] {
        let out = tvcode(args, HALVING4);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn trajectory_marks_breakpoints() {
    let out = tvcode(&["trajectory", "--steps", "10"], HALVING4);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,symbol_index,weight,breakpoint"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let mut bps: Vec<&str> = rows.iter().filter(|r| r[3] == "1").map(|r| r[0]).collect();
    bps.dedup();
    assert_eq!(bps, vec!["0", "0.0666666666667", "0.266666666667", "0.3"]);
    let last: Vec<f64> = rows[rows.len() - 4..].iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(last, vec![0.25; 4]);
    // each alpha block sums to one
    for block in rows.chunks(4) {
        let s: f64 = block.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-10);
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--alpha", "0.1", "--trials", "100", "--seed", "7"];
    let a = tvcode(&args, HALVING4);
    let b = tvcode(&args, HALVING4);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0));

    let other = tvcode(
        &["verify", "--alpha", "0.1", "--trials", "100", "--seed", "8"],
        HALVING4,
    );
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn verify_warns_when_enumeration_is_skipped() {
    let csv: String = (1..=20).map(|i| format!("s{i},{}\n", i as f64 / 210.0)).collect();
    let f = file(".csv", &csv);
    let out = tvcode(&["verify", "--input", f.path().to_str().unwrap(), "--trials", "0"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration skipped"));
    let v = json(&out);
    let oracle = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "oracle_equivalence")
        .unwrap();
    assert_eq!(oracle["evaluated"], 0);
}

#[test]
fn metrics_against_reference() {
    let input = r#"{"probabilities": [0.5333333333333333, 0.26666666666666666, 0.13333333333333333, 0.06666666666666667], "reference": [0.25, 0.25, 0.25, 0.25]}"#;
    let v = json(&tvcode(&["metrics"], input));
    assert_eq!(v["comparison"]["tv_distance"].as_f64(), Some(0.6));
    assert_eq!(v["comparison"]["kl_forward"].as_f64(), Some(0.249377769287));
    assert_eq!(v["comparison"]["pinsker"]["holds"], true);
    assert_eq!(v["entropy"].as_f64(), Some(1.64022392894));
}
