//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL` line on
//! stderr (bypassing output capture) and fails on any diverging check.

use std::io::Write;
use std::time::{Duration, Instant};

use susyva::charmod::Complex64;
use susyva::opecalc::structures::standard_quaternionic_triple;
use susyva::{Rat, Scalar};
use susyva_cli::config::{RunConfig, Setup, DEFAULT_SEED};
use susyva_cli::{suites, Status, SuiteReport};

fn setup(gram: Vec<Vec<i64>>, signs: Option<Vec<Vec<i8>>>) -> Setup {
    Setup::new(gram, signs).unwrap()
}

fn int_matrix(m: &[&[i64]]) -> Vec<Vec<Scalar>> {
    m.iter().map(|row| row.iter().map(|x| Scalar::int(*x)).collect()).collect()
}

fn diag(n: usize, d: i64) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { d } else { 0 }).collect()).collect()
}

fn run_config() -> RunConfig {
    let seed = std::env::var("SUSYVA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    RunConfig { seed, ..RunConfig::default() }
}

struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: 0, failures: Vec::new() }
    }

    /// Record a suite that must run and pass.
    fn require(&mut self, label: &str, r: SuiteReport) {
        self.checks += r.checks.len();
        match r.status {
            Status::Pass if !r.checks.is_empty() => {}
            Status::Pass => self.failures.push(format!("{label}: {} ran no checks", r.suite)),
            Status::Skipped => self.failures.push(format!("{label}: {} skipped ({})", r.suite, r.reason.unwrap_or_default())),
            Status::Fail => {
                let detail = match r.first_failure() {
                    Some(c) => format!("{}\n    lhs: {}\n    rhs: {}", c.name, c.lhs, c.rhs),
                    None => r.reason.clone().unwrap_or_default(),
                };
                self.failures.push(format!("{label}: {} failed at {detail}", r.suite));
            }
        }
    }

    /// Record a suite that must fail on the named check.
    fn require_failure(&mut self, label: &str, r: SuiteReport, at: &str) {
        self.checks += 1;
        match r.first_failure() {
            Some(c) if c.name.starts_with(at) => {}
            Some(c) => self.failures.push(format!("{label}: expected failure at `{at}`, first failure `{}`", c.name)),
            None => self.failures.push(format!("{label}: expected failure at `{at}`, suite passed")),
        }
    }

    fn finish(self, n: u32, title: &str, started: Instant, limit: Duration) {
        let elapsed = started.elapsed();
        let mut failures = self.failures;
        if elapsed > limit {
            failures.push(format!("runtime {elapsed:.1?} exceeds {limit:?}"));
        }
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        let line = format!("{status} criterion {n}: {title} ({} checks, {elapsed:.1?}, limit {limit:?})", self.checks);
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "{line}");
        for f in &failures {
            let _ = writeln!(err, "  {f}");
        }
        assert!(failures.is_empty(), "{line}\n{}", failures.join("\n"));
    }
}

#[test]
fn criterion_1_golden_bracket_tables() {
    let t = Instant::now();
    let mut o = Outcome::new();
    for gram in [vec![vec![1]], vec![vec![2]], vec![vec![2, -1], vec![-1, 2]]] {
        let s = setup(gram.clone(), None);
        o.require(&format!("gram {gram:?}"), suites::brackets(&s).unwrap());
    }
    let iso = setup(vec![vec![0, -1], vec![-1, 0]], Some(vec![vec![1, 1], vec![-1, 1]]));
    o.require("isotropic", suites::brackets(&iso).unwrap());
    let ind = setup(vec![vec![1, 0], vec![0, -1]], Some(vec![vec![1, 1], vec![-1, -1]]));
    o.require("indefinite", suites::brackets(&ind).unwrap());
    for gram in [vec![vec![1]], vec![vec![2]]] {
        o.require(&format!("gram {gram:?}"), suites::n3(&setup(gram.clone(), None)).unwrap());
    }
    let flipped = setup(vec![vec![2]], Some(vec![vec![-1]]));
    o.require_failure("flipped cocycle", suites::brackets(&flipped).unwrap(), "norm two");
    o.finish(1, "golden bracket tables", t, Duration::from_secs(10));
}

#[test]
fn criterion_2_conformal_structures() {
    let t = Instant::now();
    let mut o = Outcome::new();
    for gram in [vec![vec![1]], vec![vec![2]], vec![vec![0, 1], vec![1, 0]], diag(4, 2)] {
        o.require(&format!("gram {gram:?}"), suites::conformal(&setup(gram.clone(), None)).unwrap());
    }
    let mut hyp = setup(vec![vec![0, 1], vec![1, 0]], None);
    hyp.n2 = Some(int_matrix(&[&[1, 0], &[0, -1]]));
    let cfg = RunConfig { e_max: Rat::new(5, 2), ..run_config() };
    o.require("hyperbolic plane", suites::n2(&hyp, &cfg).unwrap());
    let mut d4 = setup(diag(4, 2), None);
    d4.n4 = Some(standard_quaternionic_triple());
    o.require("diag(2,2,2,2)", suites::n4(&d4).unwrap());
    o.finish(2, "conformal, N=2 and little N=4 structures", t, Duration::from_secs(30));
}

#[test]
fn criterion_3_oracle_equivalence() {
    let t = Instant::now();
    let mut o = Outcome::new();
    let cfg = RunConfig { e_max: Rat::new(7, 2), ..run_config() };
    for gram in [vec![vec![1]], vec![vec![2]]] {
        o.require(&format!("gram {gram:?}"), suites::oracle(&setup(gram.clone(), None), &cfg).unwrap());
    }
    let mut two = setup(diag(2, 2), None);
    let i = Scalar::i();
    two.n2 = Some(vec![vec![Scalar::zero(), -i.clone()], vec![i, Scalar::zero()]]);
    let small = RunConfig { e_max: Rat::new(5, 2), ..run_config() };
    o.require("two supersymmetries on diag(2,2)", suites::n2(&two, &small).unwrap());
    o.finish(3, "commutator re-verification on Fock truncations", t, Duration::from_secs(120));
}

#[test]
fn criterion_4_characters() {
    let t = Instant::now();
    let mut o = Outcome::new();
    let cfg = RunConfig { order: Rat::from(8), ..run_config() };
    let r = suites::characters(&setup(vec![vec![2]], None), &cfg).unwrap();
    assert!(r.checks.iter().all(|c| !c.name.contains("lowered")), "depth must not be reduced");
    o.require("gram [[2]]", r);
    o.finish(4, "closed-form characters against Fock counting", t, Duration::from_secs(30));
}

#[test]
fn criterion_5_modular_identities() {
    let t = Instant::now();
    let mut o = Outcome::new();
    let taus = vec![
        Complex64::new(0.0, 1.0),
        Complex64::new(0.25, 0.75),
        Complex64::new(0.1, 0.5),
        Complex64::new(-1.0 / 3.0, 2.0),
        Complex64::new(0.6, 0.2),
    ];
    let cfg = RunConfig { taus, tol: 1e-6, ..run_config() };
    for gram in [vec![vec![2]], diag(2, 2)] {
        let r = suites::modular(&setup(gram.clone(), None), &cfg).unwrap();
        assert_eq!(r.checks.len(), 25);
        o.require(&format!("gram {gram:?}"), r);
    }
    o.finish(5, "S and T identities at five sample points", t, Duration::from_secs(60));
}

#[test]
fn criterion_6_property_suites() {
    let t = Instant::now();
    let mut o = Outcome::new();
    let cfg = run_config();
    for gram in [vec![vec![1]], vec![vec![2]], vec![vec![2, -1], vec![-1, 2]], vec![vec![0, 1], vec![1, 0]]] {
        let r = suites::properties(&setup(gram.clone(), None), &cfg).unwrap();
        for needle in ["skew-symmetry on 50", "Jacobi on 50", "cocycle locality on 100", "flipping χ²", "flipping the Berezin"] {
            if !r.checks.iter().any(|c| c.name.starts_with(needle)) {
                o.failures.push(format!("gram {gram:?}: missing `{needle}`"));
            }
        }
        o.require(&format!("gram {gram:?}"), r);
    }
    o.finish(6, "skew-symmetry, Jacobi, cocycle and convention mutations", t, Duration::from_secs(60));
}
