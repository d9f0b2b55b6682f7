//! The `susyva` binary: exit codes, output formats and sample commands.

use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn susyva(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susyva")).args(args).env_remove("SUSYVA_SEED").output().unwrap()
}

fn with_config(name: &str, args: &[&str]) -> Output {
    let path = config(name);
    let mut all = vec!["--config", path.to_str().unwrap()];
    all.extend_from_slice(args);
    susyva(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bracket_prints_grouped_lines() {
    let o = with_config("norm2.json", &["bracket", "Gamma[1]", "Gamma[-1]"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("chi^0: :h[1] S(h[1]): + T(h[1]) + lambda*(h[1])"), "{text}");
    assert!(text.contains("chi^1: S(h[1]) + lambda"), "{text}");
    assert!(text.contains("oracle agrees: PASS"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(susyva(&["verify"]).status.code(), Some(2));
    assert_eq!(with_config("unit.json", &["bracket", "Gamma[1,0]", "h[1]"]).status.code(), Some(2));
    assert_eq!(with_config("unit.json", &["bracket", "Gamma[1", "h[1]"]).status.code(), Some(2));
    assert_eq!(with_config("unit.json", &["--tol", "0", "modular-check"]).status.code(), Some(2));
    assert_eq!(with_config("unit.json", &["verify", "--suites", "nope"]).status.code(), Some(2));
    assert_eq!(with_config("unit.json", &["--emax", "-1", "fock"]).status.code(), Some(2));
}

#[test]
fn flipped_cocycle_fails_brackets() {
    let o = with_config("norm2-flipped.json", &["verify", "--suites", "brackets"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("first failure: norm two: [Gamma[1] Λ Gamma[-1]]"), "{text}");
    assert!(text.contains("lhs: ") && text.contains("rhs: "));
}

#[test]
fn verify_passes_on_norm_two() {
    let o = with_config("norm2.json", &["verify", "--suites", "brackets,conformal,iso,n3,characters,modular,properties"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("overall PASS\n"));
}

#[test]
fn json_mirrors_text() {
    let args = ["verify", "--suites", "brackets,properties"];
    let text = stdout(&with_config("a2.json", &args));
    let mut json_args = vec!["--format", "json"];
    json_args.extend_from_slice(&args);
    let v: serde_json::Value = serde_json::from_str(&stdout(&with_config("a2.json", &json_args))).unwrap();
    let mut names = Vec::new();
    for suite in v["suites"].as_array().unwrap() {
        for c in suite["checks"].as_array().unwrap() {
            let status = if c["passed"].as_bool().unwrap() { "PASS" } else { "FAIL" };
            names.push(format!("{status} {}", c["name"].as_str().unwrap()));
        }
    }
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).collect();
    assert_eq!(lines, names);
    assert_eq!(v["passed"], serde_json::Value::Bool(text.ends_with("overall PASS\n")));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "verify", "--suites", "brackets,properties"];
    assert_eq!(stdout(&with_config("a2.json", &args)), stdout(&with_config("a2.json", &args)));
}

#[test]
fn fock_and_characters() {
    let o = with_config("norm2.json", &["--emax", "2", "fock", "--sector", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["  0: 1", "  1/2: 1", "  1: 3", "  3/2: 4", "  2: 5"] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
    let o = with_config("norm2.json", &["--order", "8", "characters"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6, "two cosets, three characters each");
    assert_eq!(with_config("norm2.json", &["fock", "--sector", "2"]).status.code(), Some(2));
}

#[test]
fn lattice_info_and_cocycle() {
    let text = stdout(&with_config("a2.json", &["lattice-info"]));
    assert!(text.contains("rank 2 det 3 even true positive-definite true |Q*/Q| 3"), "{text}");
    let o = with_config("isotropic.json", &["--format", "json", "cocycle"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["signs"], serde_json::json!([[1, 1], [-1, 1]]));
    assert_eq!(v["locality"], serde_json::Value::Bool(true));
}

#[test]
fn modular_check_with_custom_tau() {
    let o = with_config("norm2.json", &["modular-check", "--tau", "-1/3,2", "--tau", "0.1,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 10);
}
