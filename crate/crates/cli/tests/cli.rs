use std::process::{Command, Output};

fn lagrange(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagrange")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(line: &str, i: usize) -> f64 {
    line.split(',').nth(i).unwrap().parse().unwrap()
}

#[test]
fn golden_constant() {
    let o = lagrange(&["approx-const", "--setting", "rational", "--cf", "[1;(1)]"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("estimate,"));
    assert!((field(row, 2) - 0.4472135955).abs() < 1e-10);
}

#[test]
fn exit_codes() {
    assert_eq!(lagrange(&["approx-const", "--setting", "rational", "--cf", "[2]"]).status.code(), Some(2));
    assert_eq!(lagrange(&["spectrum", "--bogus"]).status.code(), Some(1));
    assert_eq!(lagrange(&["approx-const", "--cf", "[1;(x)]"]).status.code(), Some(1));
    assert_eq!(lagrange(&["duality-check", "--cf", "[1; 2, 3, 4, ...]"]).status.code(), Some(2));
    assert_eq!(lagrange(&["spectrum", "--cutoff", "-1"]).status.code(), Some(1));
    assert_eq!(lagrange(&["spectrum", "--setting", "heisenberg"]).status.code(), Some(1));
    assert_eq!(lagrange(&["--help"]).status.code(), Some(0));
    let usage = lagrange(&["spectrum", "--bogus"]);
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
}

#[test]
fn rational_spectrum_rows() {
    let o = lagrange(&["spectrum", "--setting", "rational", "--word-length", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("value,height,witness,certified"));
    let values: Vec<f64> = lines.take(3).map(|l| field(l, 0)).collect();
    let expect = [1.0 / 5f64.sqrt(), 1.0 / 8f64.sqrt(), 5.0 / 221f64.sqrt()];
    for (v, e) in values.iter().zip(expect) {
        assert!((v - e).abs() < 1e-13, "{v} vs {e}");
    }
    let header_only = lagrange(&["spectrum", "--word-length", "1"]);
    assert_eq!(stdout(&header_only), "value,height,witness,certified\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--setting", "bianchi", "--m", "2", "--word-length", "3", "--format", "json"];
    let a = lagrange(&args);
    let b = lagrange(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn duality_gaps() {
    for cf in ["[1;(1)]", "[1;(2)]"] {
        let o = lagrange(&["duality-check", "--cf", cf, "--format", "json"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v["gap"].as_f64().unwrap() < 1e-5, "{cf}: {v}");
    }
}

#[test]
fn bianchi_and_heisenberg_estimates() {
    let o = lagrange(&["approx-const", "--setting", "bianchi", "--m", "1", "--x", "(1+i*sqrt3)/2", "--norm-bound", "2000"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let v = field(text.lines().nth(1).unwrap(), 2);
    assert!((v - 1.0 / 3f64.sqrt()).abs() < 1e-2);

    let h = lagrange(&["approx-const", "--setting", "heisenberg", "--point", "1,1.4142135623730951;1,1", "--norm-bound", "100"]);
    assert!(h.status.success());
    assert_eq!(lagrange(&["approx-const", "--setting", "heisenberg", "--point", "1,1/3;1,1"]).status.code(), Some(2));
    assert_eq!(lagrange(&["approx-const", "--setting", "bianchi", "--x", "1/2+i/3"]).status.code(), Some(2));
}

#[test]
fn heights_and_penetration() {
    let o = lagrange(&["height", "--matrix", "[[2,1],[1,1]]", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["height"].as_f64().unwrap() - (5f64.sqrt() / 2.0).ln()).abs() < 1e-14);
    assert_eq!(v["certified"], true);
    assert_eq!(lagrange(&["height", "--matrix", "[[1,1],[0,1]]"]).status.code(), Some(2));

    let p = lagrange(&["penetration", "--setting", "bianchi", "--matrix", "[[1,0],[2+i,1]]", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&p.stdout).unwrap();
    assert!(v["gap"].as_f64().unwrap() < 1e-9);
    let q = lagrange(&["penetration", "--setting", "heisenberg", "--q", "1+i"]);
    let text = stdout(&q);
    assert!((field(text.lines().nth(1).unwrap(), 1) - 1.0397207708).abs() < 1e-9);
}

#[test]
fn closure_report_json() {
    let o = lagrange(&["closure-report", "--word-length", "14", "--cf", "[1;(1)]", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["max_value", "min_height", "accumulation_candidates", "duality_violations"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["accumulation_candidates"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| (c["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-3));
    assert!(v["nearest_heights"][0]["gap"].as_f64().unwrap() < 1e-5);
    assert!(v["duality_violations"].as_array().unwrap().is_empty());
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("lagrange-cli-test-{}.csv", std::process::id()));
    let o = lagrange(&["spectrum", "--word-length", "4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.starts_with("value,height,witness,certified\n0.447213595499958,"));
}
