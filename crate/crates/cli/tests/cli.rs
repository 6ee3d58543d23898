use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cone-spectra")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const DEFICIENCY_EXAMPLE: &str = r#"{"kernel_plus": 0, "kernel_minus": 0, "positive": [{"mu": 0.4, "weight": 1}], "lambda": 0.5}"#;

#[test]
fn zeta_lp_closed_form() {
    let v = json(&["zeta-lp", "--p", "0.5", "--s", "1.0"]);
    assert!((v["re"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(v["im"].as_f64(), Some(0.0));
}

#[test]
fn deficiency_example() {
    let dir = std::env::temp_dir().join(format!("cone-spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(&path, DEFICIENCY_EXAMPLE).unwrap();
    let v = json(&["deficiency", "--in", path.to_str().unwrap()]);
    assert_eq!(v, serde_json::json!({"n_plus": 1, "n_minus": 1}));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_passes_and_lists_checks() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v.as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == true && c["residual"].is_number()));
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["verify", "--seed", "5"],
        vec!["zeta-lp", "--p", "1", "--grid", "s=0.6:1.8:7", "--format", "csv"],
        vec!["eta", "--in", r#"{"data": [{"lambda": 0.7}, {"lambda": -1.3, "weight_re": 2}]}"#],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn grid_order_is_input_order_for_any_thread_count() {
    let args = ["zeta-lp", "--s-re", "0.7", "--grid", "p=2.5,0.5,1.5,1,2", "--format", "csv"];
    let outputs: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|n| {
            let out = Command::new(env!("CARGO_BIN_EXE_cone-spectra"))
                .args(args)
                .env("CONE_SPECTRA_THREADS", n)
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    let ps: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(ps[0], "2.5000000000000000e0");
    assert_eq!(ps[4], "2.0000000000000000e0");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("cone-spectra-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(&path, r#"{"p": 0.5, "s-re": 2.0}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let from_cfg = json(&["zeta-lp", "--config", cfg]);
    assert_eq!(from_cfg["s_re"].as_f64(), Some(2.0));
    let overridden = json(&["zeta-lp", "--config", cfg, "--s-re", "1"]);
    assert!((overridden["re"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(run(&["zeta-lp", "--config", cfg]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["deficiency", "--in", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["zeta-lp", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["zeta-lp", "--p", "1", "--s-re", "1", "--tol", "1e-2"]).status.code(), Some(2));
    let fredholm = r#"{"kernel_plus": 2, "kernel_minus": 0, "lambda": 0.5, "fredholm": true}"#;
    assert_eq!(run(&["deficiency", "--in", fredholm]).status.code(), Some(2));
    let bad_order = r#"{"data": [{"lambda": 1, "p": -2}]}"#;
    assert_eq!(run(&["zeta-op", "--in", bad_order, "--s-re", "1.2"]).status.code(), Some(2));
}

#[test]
fn csv_uses_round_trip_notation() {
    let out = run(&["zeta-lp", "--p", "0.5", "--s-re", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("im,p,re,s_im,s_re"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2], "1.0000000000000000e0");
}

#[test]
fn residues_and_heat_trace() {
    let spec = r#"{"data": [{"lambda": 0.25}, {"lambda": 4, "weight_re": 2}]}"#;
    let r = json(&["zeta-op", "--in", spec, "--residues"]);
    assert!((r["res0"]["re"].as_f64().unwrap() + 4.5).abs() < 1e-9);
    let h = json(&["heat-trace", "--in", r#"{"data": [{"lambda": 1}]}"#, "--t", "0.001"]);
    let (e, tr) = (h["expansion"]["re"].as_f64().unwrap(), h["trace"]["re"].as_f64().unwrap());
    assert!((e - tr).abs() < 1e-4 * tr.abs());
}
