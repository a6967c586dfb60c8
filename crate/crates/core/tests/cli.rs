use std::path::Path;
use std::process::{Command, Output};

use quasilag::cli::load_scheme;

fn quasilag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasilag")).args(args).output().expect("spawn quasilag")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn multiquadric_without_c_is_a_config_error() {
    let o = quasilag(&["certify", "--scheme", "gmq-basic", "--no-convergence"]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unknown_scheme_and_bad_flags_exit_2() {
    assert_eq!(code(&quasilag(&["decay", "--scheme", "nope"])), 2);
    assert_eq!(code(&quasilag(&["build", "--bogus"])), 2);
    assert_eq!(code(&quasilag(&["decay", "--scheme", "tps-cardinal", "--lo", "20", "--hi", "40"])), 2);
}

#[test]
fn empty_table_filter_exits_2() {
    assert_eq!(code(&quasilag(&["tables", "--only", ","])), 2);
    assert_eq!(code(&quasilag(&["tables", "--only", "splines"])), 2);
}

#[test]
fn specfun_selftest_passes() {
    let o = quasilag(&["specfun", "selftest"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() >= 4 && text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

fn read_csv(path: &Path) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,psi"));
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn build_writes_weights_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = quasilag(&["build", "--scheme", "gmq-basic", "--c", "0.5", "--out", out, "--samples", "41"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let doc_path = dir.path().join("gmq-basic.json");
    let (doc, q) = load_scheme(&doc_path).unwrap();
    let w = doc.weights.expect("finite weights");
    let want = [1.0 / 12.0, -1.0 / 3.0, 0.5, -1.0 / 3.0, 1.0 / 12.0];
    assert_eq!(w.len(), want.len());
    for (a, b) in w.iter().zip(want) {
        assert!((a - b).abs() < 1e-15, "{w:?}");
    }

    let rows = read_csv(&dir.path().join("gmq-basic_psi.csv"));
    assert_eq!(rows.len(), 41);
    for (x, psi) in rows {
        assert_eq!(q.eval_psi(x).unwrap().to_bits(), psi.to_bits(), "x = {x}");
    }
    assert!(dir.path().join("gmq-basic_psi_hat.csv").exists());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "scheme = \"gmq-basic\"\nc = 0.5\nlo = 10.0\nhi = 100.0\nsamples = 200\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = quasilag(&["decay", "--config", cfg, "--scheme", "bspline-basic"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "compact_support");
    let o = quasilag(&["decay", "--config", cfg]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lo"].as_f64(), Some(10.0));
    assert!((v["exponent"].as_f64().unwrap() + 5.0).abs() < 0.3, "{v}");
    std::fs::write(dir.path().join("bad.toml"), "colour = 1\n").unwrap();
    let bad = dir.path().join("bad.toml");
    assert_eq!(code(&quasilag(&["decay", "--config", bad.to_str().unwrap()])), 2);
}

#[test]
fn multiquadric_table_has_four_rows() {
    let o = quasilag(&["tables", "--only", "mq", "--no-convergence", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let tables = v.as_array().unwrap();
    assert_eq!(tables.len(), 1);
    assert_eq!(tables[0]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn converge_prints_ladder_csv() {
    let o = quasilag(&["converge", "--scheme", "bspline-basic", "--function", "gauss"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h,sup_error"));
    assert_eq!(lines.count(), 4);
}
