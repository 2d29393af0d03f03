//! End-to-end tests of the command-line surface: spec examples, exit
//! codes, JSON determinism, and the precision environment override.

use std::process::{Command, Output};

fn parshin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parshin"))
        .args(args)
        .env_remove("PARSHIN_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn symbol_example() {
    let out = parshin(&["symbol", "--field", "Fp:7", "--f", "(t)", "--g", "(u)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn commutator_weighted_field() {
    let out = parshin(&[
        "commutator",
        "--field",
        "Fp:5/x^2+3",
        "--f",
        "(t)",
        "--g",
        "(u)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn point_law_example() {
    let out = parshin(&[
        "point-law", "--field", "Q", "--point", "0,0", "--f", "(x)", "--g", "(y)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("total = 0"));
    assert!(stdout(&out).contains("pass"));
}

#[test]
fn curve_law_example() {
    let out = parshin(&[
        "curve-law", "--field", "Q", "--curve", "Y", "--f", "(y)", "--g", "(x)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("total = 0"));
}

#[test]
fn branches_output_round_trips() {
    let out = parshin(&[
        "branches",
        "--field",
        "Q",
        "--curve",
        "y^2 - x^3",
        "--point",
        "0,0",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"ram\":2"), "{}", text);
    assert!(text.contains("\"residue_degree\":1"));
}

#[test]
fn input_errors_exit_2() {
    let out = parshin(&["symbol", "--field", "Fp:6", "--f", "(t)", "--g", "(u)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = parshin(&["point-law", "--field", "Q", "--point", "0,0", "--f", "(x", "--g", "(y)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = parshin(&[
        "curve-law", "--field", "Q", "--curve", "Y + X^2", "--f", "(y)", "--g", "(x)",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = [
        "point-law", "--field", "Q", "--point", "0,0", "--f", "(y^2 - x^3)", "--g", "(x)",
        "--json",
    ];
    let a = parshin(&args);
    let b = parshin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("{\"law\":\"point-law\""));
}

#[test]
fn precision_env_and_flag_agree() {
    let base = parshin(&[
        "curve-law", "--field", "Fp:7", "--curve", "Y^2*Z - X^3", "--f", "(y^2 - x^3)",
        "--g", "(x)", "--json",
    ]);
    let with_flag = parshin(&[
        "curve-law", "--field", "Fp:7", "--curve", "Y^2*Z - X^3", "--f", "(y^2 - x^3)",
        "--g", "(x)", "--json", "--precision", "8",
    ]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_parshin"))
        .args([
            "curve-law", "--field", "Fp:7", "--curve", "Y^2*Z - X^3", "--f", "(y^2 - x^3)",
            "--g", "(x)", "--json",
        ])
        .env("PARSHIN_PRECISION", "64")
        .output()
        .unwrap();
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(stdout(&base), stdout(&with_flag));
    assert_eq!(stdout(&base), String::from_utf8_lossy(&with_env.stdout));
}

#[test]
fn law_violation_never_but_wired() {
    // no law violation is reachable with valid inputs; exercise the flag
    // parser paths instead and confirm a passing verdict exits 0
    let out = parshin(&[
        "point-law", "--field", "Fp:7", "--point", "0,0", "--f", "(x*y)", "--g", "(x+y)",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
