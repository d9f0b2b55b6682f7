//! Config parsing and suite selection.

use proptest::prelude::*;
use susyva::Scalar;
use susyva_cli::config::{parse_rat, parse_tau, RunConfig, Setup};
use susyva_cli::suites::{select, SUITES};
use susyva_cli::CliError;

#[test]
fn matrix_entries_accept_integers_rationals_and_i() {
    let s = Setup::from_json(r#"{"gram": [[2, 0], [0, 2]], "cocycle": "default", "n2": [[0, "-i"], ["i", "1/2-3/4*i"]]}"#).unwrap();
    let a = s.n2.unwrap();
    assert_eq!(a[0][0], Scalar::int(0));
    assert_eq!(a[0][1], -Scalar::i());
    assert_eq!(a[1][0], Scalar::i());
    assert_eq!(a[1][1], Scalar::ratio(1, 2) - Scalar::i() * Scalar::ratio(3, 4));
}

#[test]
fn bad_configs_are_rejected() {
    for src in [
        r#"{"gram": [[1, 2], [3, 4]]}"#,
        r#"{"gram": [[2]], "cocycle": "other"}"#,
        r#"{"gram": [[2]], "typo": 1}"#,
        r#"{"gram": [[2, -1], [-1, 2]], "cocycle": {"signs": [[1, 1], [1, 1]]}}"#,
        r#"{"gram": [[2]], "n2": [["x"]]}"#,
    ] {
        let err = Setup::from_json(src).unwrap_err();
        assert!(matches!(err, CliError::Config(_) | CliError::Engine(_)), "{src}: {err}");
        assert_eq!(err.exit_code(), if matches!(err, CliError::Config(_)) { 2 } else { 1 });
    }
}

#[test]
fn run_config_validation() {
    assert!(RunConfig::default().validate().is_ok());
    assert!(RunConfig { tol: -1.0, ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { e_max: parse_rat("0").unwrap(), ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { taus: vec![parse_tau("0,-1").unwrap()], ..RunConfig::default() }.validate().is_err());
    assert_eq!(RunConfig { order: parse_rat("15/2").unwrap(), ..RunConfig::default() }.depth(), 8);
}

#[test]
fn tau_parsing() {
    let t = parse_tau("-1/3, 2").unwrap();
    assert!((t.re + 1.0 / 3.0).abs() < 1e-15 && t.im == 2.0);
    assert!(parse_tau("1").is_err());
    assert!(parse_tau("a,1").is_err());
}

proptest! {
    #[test]
    fn selection_is_ordered_and_deduplicated(picks in prop::collection::vec(0usize..10, 1..20)) {
        let spec: Vec<&str> = picks.iter().map(|&i| SUITES[i]).collect();
        let chosen = select(&spec.join(",")).unwrap();
        let mut want: Vec<&str> = SUITES.iter().copied().filter(|s| spec.contains(s)).collect();
        want.dedup();
        prop_assert_eq!(chosen, want);
    }

    #[test]
    fn diagonal_lattices_load(d in prop::collection::vec(1i64..5, 1..4), flip in any::<bool>()) {
        let n = d.len();
        let gram: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        let mut src = format!(r#"{{"gram": {gram:?}"#);
        if flip {
            let signs: Vec<Vec<i8>> = (0..n).map(|i| (0..n).map(|j| if i == j { -1 } else if i < j { 1 } else if (d[i] * d[j]) % 2 == 0 { 1 } else { -1 }).collect()).collect();
            src.push_str(&format!(r#", "cocycle": {{"signs": {signs:?}}}"#));
        }
        src.push('}');
        let s = Setup::from_json(&src).unwrap();
        prop_assert_eq!(s.lattice.rank(), n);
        if flip {
            prop_assert_eq!(s.cocycle.basis(0, 0), -1);
        }
    }
}
