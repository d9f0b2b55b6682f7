//! Subcommand bodies. Each returns an [`Output`] holding the text rendering and a
//! JSON value with the same content.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use susyva::charmod::{character_suite, modular_check, ModularIdentity, QSeries};
use susyva::fock::{enumerate_basis, FockSector};
use susyva::lattice::{describe, discriminant_group, locality_sign, unit};
use susyva::opecalc::{parse_expr, BracketResult, Calculus, FieldExpr};
use susyva::Rat;

use crate::config::{RunConfig, Setup};
use crate::{suites, CliError, VerifyReport};

pub struct Output {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, passed: true }
    }
}

fn rat_list(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn lattice_info(setup: &Setup) -> Output {
    let l = &setup.lattice;
    let d = discriminant_group(l);
    let cosets: Vec<String> = d.coset_reps.iter().map(|m| rat_list(m)).collect();
    let mut text = format!("gram {l}\n{}\n", describe(l));
    text.push_str(&format!("invariants {:?}\n", d.invariants));
    for (i, c) in cosets.iter().enumerate() {
        text.push_str(&format!("coset {i}: {c}\n"));
    }
    let json = json!({
        "gram": l.gram(),
        "rank": l.rank(),
        "det": l.det(),
        "even": l.is_even(),
        "positive_definite": l.is_positive_definite(),
        "invariants": d.invariants,
        "order": d.order,
        "cosets": cosets,
    });
    Output::ok(text, json)
}

pub fn cocycle(setup: &Setup) -> Output {
    let (l, c) = (&setup.lattice, &setup.cocycle);
    let r = l.rank();
    let signs: Vec<Vec<i8>> = (0..r).map(|i| (0..r).map(|j| c.basis(i, j)).collect()).collect();
    let mut text = String::from("basis signs\n");
    for row in &signs {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:+}")).collect();
        text.push_str(&format!("  {}\n", cells.join(" ")));
    }
    let mut local = true;
    for i in 0..r {
        for j in 0..r {
            let (a, b) = (unit(r, i), unit(r, j));
            local &= c.epsilon(&a, &b) == locality_sign(l, &a, &b) * c.epsilon(&b, &a);
        }
    }
    text.push_str(&format!("locality on basis pairs: {}\n", if local { "PASS" } else { "FAIL" }));
    Output { text, json: json!({ "signs": signs, "locality": local }), passed: local }
}

/// `chi^k: …` lines grouped by the power of `χ`.
pub fn bracket_lines(br: &BracketResult) -> Vec<String> {
    let mut by_chi: BTreeMap<u8, Vec<String>> = BTreeMap::new();
    for (m, e) in &br.terms {
        let lam = match m.j {
            0 => String::new(),
            1 => "lambda".to_string(),
            j => format!("lambda^{j}"),
        };
        let body = match (lam.is_empty(), e) {
            (true, _) => format!("{e}"),
            (false, FieldExpr::Vacuum) => lam,
            (false, _) => format!("{lam}*({e})"),
        };
        by_chi.entry(m.chi).or_default().push(body);
    }
    if by_chi.is_empty() {
        return vec!["0".to_string()];
    }
    by_chi.into_iter().map(|(c, parts)| format!("chi^{c}: {}", parts.join(" + "))).collect()
}

pub fn bracket(setup: &Setup, a: &str, b: &str) -> Result<Output, CliError> {
    let l = &setup.lattice;
    let calc = Calculus::new(l, &setup.cocycle);
    let parse = |src: &str| parse_expr(src, l).map_err(|e| CliError::Usage(format!("expression `{src}`: {e}")));
    let (x, y) = (parse(a)?, parse(b)?);
    let oracle = calc.oracle_bracket(&x, &y)?;
    let (route, result, agree) = match calc.susy_bracket(&x, &y) {
        Ok(rules) => {
            let agree = calc.bracket_equal(&rules, &oracle)?;
            ("rules", rules, Some(agree))
        }
        Err(susyva::Error::Delegate(_)) => ("oracle", oracle, None),
        Err(e) => return Err(e.into()),
    };
    let lines = bracket_lines(&result);
    let mut text = format!("[{x} Λ {y}] via {route}\n");
    for line in &lines {
        text.push_str(line);
        text.push('\n');
    }
    if let Some(ok) = agree {
        text.push_str(&format!("oracle agrees: {}\n", if ok { "PASS" } else { "FAIL" }));
    }
    let terms: Vec<Value> = result.terms.iter().map(|(m, e)| json!({ "lambda": m.j, "chi": m.chi, "expr": e.to_string() })).collect();
    let json = json!({ "a": x.to_string(), "b": y.to_string(), "route": route, "lines": lines, "terms": terms, "oracle_agrees": agree });
    Ok(Output { text, json, passed: agree.unwrap_or(true) })
}

pub fn fock(setup: &Setup, cfg: &RunConfig, sector: usize, twisted: bool, states: bool) -> Result<Output, CliError> {
    let l = &setup.lattice;
    let reps = discriminant_group(l).coset_reps;
    let mu = reps.get(sector).cloned().ok_or_else(|| CliError::Usage(format!("sector {sector} out of range; {} cosets", reps.len())))?;
    let sec = if twisted {
        FockSector::twisted(l.clone(), setup.cocycle.clone(), mu.clone(), cfg.e_max)
    } else {
        FockSector::ns(l.clone(), setup.cocycle.clone(), mu.clone(), cfg.e_max)
    };
    let basis = enumerate_basis(&sec)?;
    let mut dims: BTreeMap<Rat, Vec<String>> = BTreeMap::new();
    for (m, e) in basis.states.iter().zip(&basis.energies) {
        dims.entry(*e).or_default().push(m.to_string());
    }
    let kind = if twisted { "twisted" } else { "ns" };
    let mut text = format!("{kind} sector {sector} mu {} e_max {}: {} states\n", rat_list(&mu), cfg.e_max, basis.len());
    for (e, list) in &dims {
        text.push_str(&format!("  {e}: {}\n", list.len()));
        if states {
            for s in list {
                text.push_str(&format!("    {s}\n"));
            }
        }
    }
    let levels: Vec<Value> = dims
        .iter()
        .map(|(e, list)| if states { json!({ "energy": e.to_string(), "dim": list.len(), "states": list }) } else { json!({ "energy": e.to_string(), "dim": list.len() }) })
        .collect();
    let json = json!({ "sector": sector, "twisted": twisted, "mu": rat_list(&mu), "e_max": cfg.e_max.to_string(), "size": basis.len(), "levels": levels });
    Ok(Output::ok(text, json))
}

fn series_terms(q: &QSeries, top: Rat) -> Vec<(String, String)> {
    q.terms().filter(|(e, _)| **e <= top).map(|(e, c)| (e.to_string(), c.to_string())).collect()
}

pub fn characters(setup: &Setup, cfg: &RunConfig) -> Result<Output, CliError> {
    let l = &setup.lattice;
    let mut text = String::new();
    let mut out = Vec::new();
    for (i, mu) in discriminant_group(l).coset_reps.iter().enumerate() {
        let (ns, sup, tw) = character_suite(l, mu, cfg.depth() + 3)?;
        let mut entry = serde_json::Map::new();
        entry.insert("coset".into(), json!(rat_list(mu)));
        for (name, q) in [("chi", &ns), ("chi^s", &sup), ("chi^tw", &tw)] {
            let top = q.min_exponent().unwrap_or_default() + cfg.order;
            let terms = series_terms(q, top);
            let body: Vec<String> = terms.iter().map(|(e, c)| format!("{c} q^{e}")).collect();
            text.push_str(&format!("coset {i} {} {name}: {}\n", rat_list(mu), body.join(" + ")));
            entry.insert(name.into(), json!(terms.iter().map(|(e, c)| json!([e, c])).collect::<Vec<_>>()));
        }
        out.push(Value::Object(entry));
    }
    Ok(Output::ok(text, json!({ "order": cfg.order.to_string(), "cosets": out })))
}

pub fn modular(setup: &Setup, cfg: &RunConfig) -> Result<Output, CliError> {
    let l = &setup.lattice;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut passed = true;
    for id in ModularIdentity::ALL {
        for &tau in &cfg.taus {
            let r = modular_check(l, id, tau, cfg.tol)?;
            passed &= r.passed();
            let status = if r.passed() { "PASS" } else { "FAIL" };
            text.push_str(&format!("{status} {} tau = {}{:+}i max relative error {:e}\n", id.name(), tau.re, tau.im, r.max_rel_error));
            rows.push(json!({ "identity": id.name(), "tau": [tau.re, tau.im], "max_rel_error": r.max_rel_error, "passed": r.passed() }));
        }
    }
    Ok(Output { text, json: json!({ "tol": cfg.tol, "checks": rows, "passed": passed }), passed })
}

pub fn verify(setup: &Setup, cfg: &RunConfig, selected: &[&str]) -> Output {
    let reports = selected.iter().map(|s| suites::run(s, setup, cfg)).collect();
    let report = VerifyReport::new(reports);
    let json = serde_json::to_value(&report).expect("report serializes");
    Output { text: report.to_string(), json, passed: report.passed }
}
