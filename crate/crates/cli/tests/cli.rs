use std::process::{Command, Output};

use serde_json::Value;

fn rweis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rweis"))
        .args(args)
        .env_remove("RWEIS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = rweis(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn dedekind_text() {
    let out = rweis(&["dedekind", "--h", "1", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1/5");
    let naive = rweis(&["dedekind", "--h", "-4", "--k", "5", "--naive"]);
    assert_eq!(stdout(&naive).trim(), "1/5");
}

#[test]
fn kronecker_text() {
    assert_eq!(
        stdout(&rweis(&["kronecker", "--a", "-1", "--n", "7"])).trim(),
        "-1"
    );
}

#[test]
fn eta_json() {
    let v = json(&["eta", "--level", "3", "--exp", "1:9,3:-3", "--terms", "3"]);
    assert_eq!(v["offset"], "0");
    assert_eq!(v["coeffs"], serde_json::json!(["1", "-9", "27"]));
}

#[test]
fn eta_csv() {
    let out = rweis(&[
        "eta", "--level", "3", "--exp", "1:9,3:-3", "--terms", "3", "--format", "csv",
    ]);
    assert_eq!(stdout(&out), "index,value\n0,1\n1,-9\n2,27\n");
}

#[test]
fn order_at_cusps() {
    let v = json(&[
        "order", "--level", "3", "--exp", "1:9,3:-3", "--cusp", "0/1",
    ]);
    assert_eq!(v["order"], "1/3");
    let v = json(&[
        "order", "--level", "3", "--exp", "1:9,3:-3", "--cusp", "1/3",
    ]);
    assert_eq!(v["order"], "0");
}

#[test]
fn chi_formulas_agree() {
    let base = ["chi", "--p", "11", "--r1", "44/9", "--rp", "-4/9"];
    for eps in ["0", "5"] {
        let mut values = Vec::new();
        for formula in ["general", "special"] {
            let mut args = base.to_vec();
            args.extend([
                "--matrix",
                "-1,-1,11,10",
                "--formula",
                formula,
                "--eps",
                eps,
            ]);
            values.push(json(&args)["chi"]["value"].clone());
        }
        assert_eq!(values[0], values[1]);
    }
    let mut args = base.to_vec();
    args.extend(["--matrix", "1,1,0,1"]);
    assert_eq!(json(&args)["chi"]["value"], "0");
}

#[test]
fn gamma_four() {
    let out = rweis(&["gamma", "--k", "4", "--route", "p2", "--c-max", "2000"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 6.0).abs() < 1e-3, "{value}");
}

#[test]
fn eis_json_rows() {
    let v = json(&[
        "eis", "--p", "3", "--r1", "9", "--rp", "-3", "--k", "3", "--n-max", "2", "--c-max", "100",
    ]);
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert_eq!(coeffs[0]["re"], 1.0);
    assert!((coeffs[1]["re"].as_f64().unwrap() + 9.0).abs() < 1e-2);
}

#[test]
fn output_does_not_depend_on_threads() {
    let args = [
        "gamma", "--k", "8/3", "--route", "p2", "--c-max", "300", "--format", "json",
    ];
    let one = rweis(&[&["--threads", "1"][..], &args].concat());
    let four = rweis(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn verify_passes_and_fails() {
    let ok = rweis(&[
        "verify",
        "--identity",
        "characters",
        "--samples",
        "100",
        "--seed",
        "9",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).trim_end().ends_with("characters: pass"));
    let bad = rweis(&[
        "verify",
        "--identity",
        "carlitz",
        "--c-max",
        "50",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["dedekind", "--h", "1", "--k", "0"][..],
        &["gamma", "--k", "4", "--route", "p5"],
        &["eis", "--p", "4", "--r1", "8", "--rp", "8", "--k", "4"],
        &["eta", "--level", "3", "--exp", "2:1", "--terms", "3"],
        &["--precision", "12", "kronecker", "--a", "1", "--n", "3"],
    ] {
        let out = rweis(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
