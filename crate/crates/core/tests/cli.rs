use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparse-entropy"))
        .args(args)
        .env_remove("SPARSE_ENTROPY_THREADS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn entropy_on_fem() {
    let out = run(&["entropy", "--generate", "fem:100", "-n", "3", "-p", "0.95", "--seed", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    let exact = sparse_entropy::oracle::fem_exact_entropy(100);
    assert!((v["entropy"].as_f64().unwrap() - exact).abs() < v["tau"].as_f64().unwrap());
    assert_eq!(v["degree"], 3);
    assert_eq!(v["bound_method"], "gershgorin");
    assert_eq!(v["unit"], "nats");
    assert!(!out.stderr.is_empty());
}

#[test]
fn output_does_not_depend_on_threads() {
    let args = ["entropy", "--generate", "fem:300", "-n", "4", "--seed", "3"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn generate_then_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fem.mtx");
    let p = path.to_str().unwrap();
    let out = run(&["generate", "--generate", "fem:20", "--output", p]);
    assert!(out.status.success());
    assert_eq!(json(&out)["nnz"], 58);

    let from_file = json(&run(&["entropy", "--input", p, "-n", "5", "--seed", "2"]));
    let generated = json(&run(&["entropy", "--generate", "fem:20", "-n", "5", "--seed", "2"]));
    assert_eq!(from_file["entropy"], generated["entropy"]);

    let oracle = json(&run(&["oracle", "--input", p]));
    let exact = sparse_entropy::oracle::fem_exact_entropy(20);
    assert!((oracle["entropy"].as_f64().unwrap() - exact).abs() < 1e-9);
    assert!((oracle["trace"].as_f64().unwrap() - 40.0).abs() < 1e-12);
}

#[test]
fn normalize_fixed_samples_and_power_bound() {
    let v = json(&run(&[
        "entropy", "--generate", "identity:16", "-n", "6", "--normalize", "--samples", "12", "--bound", "power",
    ]));
    assert_eq!(v["samples"], 12);
    assert_eq!(v["mode"], "fixed");
    assert_eq!(v["normalized"], true);
    assert_eq!(v["bound_method"], "power-iteration");
    assert!(v["power_iteration"].is_object());
    assert!((v["entropy"].as_f64().unwrap() - 16f64.ln()).abs() < v["tau"].as_f64().unwrap());
}

#[test]
fn zero_matrix_reports_zero() {
    let out = run(&["entropy", "--generate", "zero:5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["entropy"], 0.0);
    assert_eq!(v["zero_trace"], true);
    assert_eq!(v["samples"], 0);
}

#[test]
fn verify_psd_rejects_indefinite_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("indef.mtx");
    std::fs::write(
        &path,
        "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 1.0\n2 1 3.0\n2 2 1.0\n",
    )
    .unwrap();
    let out = run(&["entropy", "--input", path.to_str().unwrap(), "--verify-psd"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "not_psd");
}

#[test]
fn usage_and_computation_errors() {
    let out = run(&["entropy", "--generate", "fem:10", "-p", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["message"].is_string());

    let out = run(&["entropy", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");

    let out = run(&["entropy", "--input", "/nonexistent/a.mtx"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "io");

    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn table1_subset() {
    let out = run(&["table1", "--sizes", "10,50", "--degrees", "2,3"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert!(r["rel_error"].as_f64().unwrap() < 0.02);
    }
}

#[test]
fn spdc_generator_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("spdc.toml");
    std::fs::write(&cfg, "m = 32\ncrystal_length = 0.0\n").unwrap();
    let spec = format!("spdc:{}", cfg.display());
    let est = json(&run(&["entropy", "--generate", &spec, "-n", "20", "--normalize"]));
    let exact = json(&run(&["oracle", "--generate", &spec, "--normalize"]));
    assert_eq!(est["dim"], 32);
    let (e, x, tau) = (
        est["entropy"].as_f64().unwrap(),
        exact["entropy"].as_f64().unwrap(),
        est["tau"].as_f64().unwrap(),
    );
    assert!((e - x).abs() < tau, "{e} vs {x} tau {tau}");

    std::fs::write(&cfg, "m = 32\nbogus = 1\n").unwrap();
    let out = run(&["entropy", "--generate", &spec]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "config");
}
