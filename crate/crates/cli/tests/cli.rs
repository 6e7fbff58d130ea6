use std::collections::BTreeMap;
use std::process::Command;

use coinrace_cli::verify::{Analytic, PmfProvider};
use coinrace_cli::{run, run_with};
use coinrace_core::exact_poly::rational;
use coinrace_core::{advantage_at, GameParams, NormalizedParams, Poly, Rational};
use serde_json::Value;

fn coinrace(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coinrace"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("coinrace").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const GAME_3_1_1: [&str; 6] = ["--n", "3", "--alpha", "1", "--beta", "1"];

#[test]
fn poly_text() {
    let (code, out, _) = coinrace(&[&["poly"], &GAME_3_1_1[..]].concat());
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 - 2p + 5p^2 - 4p^3 + p^4");

    let (code, out, _) = in_process(&["poly", "--n", "2", "--alpha", "2", "--beta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 (degenerate: I ≡ 1)");
}

#[test]
fn domain_errors_exit_two() {
    let (code, out, err) = coinrace(&["poly", "--n", "5", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("alpha must be > 0"), "{err}");

    let (code, _, err) = in_process(&["poly", "--n", "5", "--alpha", "-1", "--beta", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("alpha must be > 0"), "{err}");

    let (code, _, _) = in_process(&[
        "simulate", "--n", "5", "--alpha", "1", "--beta", "1", "--p", "1.5",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = in_process(&["poly", "--n", "abc", "--alpha", "1", "--beta", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(in_process(&["table", "7"]).0, 2);
    assert_eq!(in_process(&["table", "0"]).0, 2);
    assert_eq!(in_process(&["frobnicate"]).0, 2);
    assert_eq!(in_process(&["poly", "--n", "3"]).0, 2);
    assert_eq!(
        in_process(&["simulate", "--n", "5", "--alpha", "1", "--beta", "1"]).0,
        2
    );
    assert_eq!(
        in_process(&["poly", "--format", "yaml", "--n", "3", "--alpha", "1", "--beta", "1"]).0,
        2
    );
    let (code, out, _) = in_process(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn json_round_trip_at_one_half() {
    for (n, a, b) in [
        ("3", "1", "1"),
        ("24", "2", "1"),
        ("36", "3", "2"),
        ("7/2", "1/2", "3/4"),
    ] {
        let (code, out, _) = in_process(&[
            "--format", "json", "poly", "--n", n, "--alpha", a, "--beta", b,
        ]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        let coeffs: Vec<Rational> = doc["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().parse().unwrap())
            .collect();
        assert_eq!(doc["degree"].as_u64().unwrap() as usize + 1, coeffs.len());
        let half = rational(1, 2);
        let params = GameParams::parse(n, a, b).unwrap();
        assert_eq!(
            Poly::from_coeffs(coeffs).eval(&half),
            advantage_at(&params, &half).unwrap()
        );
    }
}

#[test]
fn json_keeps_coefficients_beyond_f64() {
    let (_, out, _) = in_process(&[
        "poly", "--format", "json", "--n", "36", "--alpha", "3", "--beta", "2",
    ]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["degree"], 22);
    assert_eq!(doc["degenerate"], false);
    assert_eq!(doc["coefficients"][12], "37533952");
}

#[test]
fn fraction_and_decimal_arguments_agree() {
    for command in ["poly", "pmf", "minimize"] {
        let a = in_process(&[command, "--n", "6", "--alpha", "3/2", "--beta", "1"]);
        let b = in_process(&[command, "--n", "6", "--alpha", "1.5", "--beta", "1"]);
        let c = in_process(&[command, "--n", "12", "--alpha", "3", "--beta", "2"]);
        assert_eq!(a.0, 0);
        assert_eq!(a, b, "{command}");
        assert_eq!(a, c, "{command}");
    }
}

#[test]
fn pmf_output() {
    let (code, out, _) = in_process(&[&["pmf"], &GAME_3_1_1[..]].concat());
    assert_eq!(code, 0);
    assert_eq!(out, "k=2: 2p - p^2\nk=3: 1 - 2p + p^2\n");

    let (_, out, _) = in_process(&["pmf", "--n", "2", "--alpha", "2", "--beta", "1"]);
    assert_eq!(out, "k=1: 1\n");

    let (_, out, _) = in_process(&[&["pmf", "--format", "json"], &GAME_3_1_1[..]].concat());
    let doc: Value = serde_json::from_str(&out).unwrap();
    let expected: Value =
        serde_json::from_str(r#"{"l":2,"m":3,"pmf":{"2":["0","2","-1"],"3":["1","-2","1"]}}"#)
            .unwrap();
    assert_eq!(doc, expected);
}

#[test]
fn minimize_output() {
    let (code, out, _) = in_process(&["minimize", "--n", "5", "--alpha", "1", "--beta", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("p_n* = 0.296"), "{out}");
    assert!(out.contains("I(p_n*) = 0.700"), "{out}");

    let (_, out, _) = in_process(&[
        "minimize", "--format", "json", "--n", "10", "--alpha", "1", "--beta", "1",
    ]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!((doc["value"].as_f64().unwrap() - 0.643).abs() < 5e-4);

    let (code, out, _) = in_process(&["minimize", "--n", "2", "--alpha", "2", "--beta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "degenerate: advantage is 1 for every p");

    assert_eq!(
        in_process(&["minimize", "--n", "5", "--alpha", "1", "--beta", "1", "--tol", "0"]).0,
        2
    );
}

#[test]
fn pstar_output() {
    for (a, b, prefix) in [
        ("1", "1", "0.267949192"),
        ("2", "1", "0.354248688"),
        ("1", "2", "0.177124344"),
    ] {
        let (code, out, _) = in_process(&["pstar", "--alpha", a, "--beta", b]);
        assert_eq!(code, 0);
        assert!(out.starts_with(&format!("p* = {prefix}")), "{out}");
    }
    assert_eq!(in_process(&["pstar", "--alpha", "0", "--beta", "1"]).0, 2);
}

#[test]
fn simulate_output() {
    let (code, out, _) = in_process(&[
        "simulate", "--format", "json", "--n", "5", "--alpha", "1", "--beta", "1", "--p", "0",
        "--trials", "100", "--seed", "7",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["frequency"], 1.0);

    let args = [
        "simulate",
        "--format",
        "json",
        "--n",
        "5",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--at-pstar",
        "--trials",
        "100000",
        "--seed",
        "7",
    ];
    let (code, out, _) = in_process(&args);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let (freq, stderr) = (
        doc["frequency"].as_f64().unwrap(),
        doc["stderr"].as_f64().unwrap(),
    );
    assert!((freq - 0.700).abs() <= 4.0 * stderr, "{freq}");
    assert_eq!(in_process(&args).1, out);
}

#[test]
fn polynomial_tables() {
    let (code, out, _) = coinrace(&["table", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[3], "3,1,1,4,1 - 2p + 5p^2 - 4p^3 + p^4");

    let (_, out, _) = in_process(&["table", "3", "--format", "csv"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert!(rows[0].ends_with(",1") && rows[0].starts_with("2,"));
    assert!(rows[1].ends_with(",1") && rows[1].starts_with("4,"));

    let (_, out, _) = in_process(&["table", "1", "--format", "latex"]);
    assert!(
        out.contains("7 & $1 - 6p + 51p^2 - 260p^3 + 850p^4 - 1,816p^5"),
        "{out}"
    );
}

#[test]
fn optimum_table_annotates_flagged_rows() {
    let (code, out, _) = in_process(&["table", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 18);
    assert!(rows[0].starts_with("5,1,1,0.2961,0.700,"), "{}", rows[0]);
    let flagged = rows.iter().find(|r| r.starts_with("20,2,3,")).unwrap();
    assert!(flagged.contains("advisory"));
    assert!(!rows[0].contains("advisory"));
}

#[test]
fn verify_reports_counts() {
    let (code, out, _) = coinrace(&[
        "verify",
        "--max-n",
        "8",
        "--max-alpha",
        "3",
        "--max-beta",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "72/72 cases match");
    let (code, out, _) = in_process(&[
        "verify",
        "--max-n",
        "1",
        "--max-alpha",
        "1",
        "--max-beta",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1/1 cases match");
    assert_eq!(in_process(&["verify", "--max-n", "0"]).0, 2);
}

struct Corrupted;

impl PmfProvider for Corrupted {
    fn pmf(&self, params: &NormalizedParams) -> coinrace_core::Result<BTreeMap<u64, Poly>> {
        let mut pmf = Analytic.pmf(params)?;
        if let Some((_, last)) = pmf.iter_mut().next_back() {
            *last = &*last + &Poly::p();
        }
        Ok(pmf)
    }
}

#[test]
fn verify_fails_on_corrupted_build() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = [
        "coinrace",
        "verify",
        "--max-n",
        "4",
        "--max-alpha",
        "2",
        "--max-beta",
        "2",
    ];
    let code = run_with(args, &Corrupted, &mut out, &mut err);
    assert_eq!(code, 1);
    let out = String::from_utf8(out).unwrap();
    assert!(out.starts_with("0/16 cases match"), "{out}");
    assert!(
        out.contains("mismatch: (n, alpha, beta) = (3, 1, 1), k = 3"),
        "{out}"
    );
}
