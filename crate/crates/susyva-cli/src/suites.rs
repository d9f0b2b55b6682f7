//! Verification suites run by `susyva verify`.

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use susyva::charmod::{character_suite, modular_check, p_series, partition_counts, sp_series, ModularIdentity, QSeries};
use susyva::fock::sector::{charge_separation_check, susy_pair_check};
use susyva::fock::{character_from_basis, enumerate_basis, l0_and_susy_operators, FockSector};
use susyva::lattice::{build_cocycle, discriminant_group, locality_sign, unit, LatticeVector};
use susyva::opecalc::checks::{chi_pin, gamma_g_pin, jacobi_defect, low_depth, n2_pin, oracle_agrees, pins_hold, skew_holds};
use susyva::opecalc::component::CompExpr;
use susyva::opecalc::n3::{build_n3_fields, rank_one_even_algebra, sl2_super_algebra, three_fermion_algebra, verify_n3, verify_three_fermions};
use susyva::opecalc::oracle::{component_fields, component_table, superfield_table, vacuum_sector};
use susyva::opecalc::structures::{build_g, build_j, check_admissible, verify_conformal, verify_iso_vq, verify_little_n4, verify_n2, verify_n2_fock};
use susyva::opecalc::{Calculus, Conventions, FieldExpr};
use susyva::{Error, Lattice, Rat, Scalar};

use crate::config::{RunConfig, Setup};
use crate::golden;
use crate::SuiteReport;

/// Suite names in report order.
pub const SUITES: [&str; 10] = ["brackets", "characters", "conformal", "iso", "modular", "n2", "n3", "n4", "oracle", "properties"];

/// Random draws per lattice in the `properties` suite.
pub const PROPERTY_SAMPLES: usize = 50;
/// Random cocycle pairs in the `properties` suite.
pub const COCYCLE_SAMPLES: usize = 100;

/// Resolve a comma-separated selection (or `all`) into report order.
pub fn select(spec: &str) -> Result<Vec<&'static str>, String> {
    let mut chosen = BTreeSet::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            chosen.extend(SUITES);
            continue;
        }
        let name = SUITES.iter().find(|s| **s == part).ok_or_else(|| format!("unknown suite `{part}`; expected one of {}", SUITES.join(", ")))?;
        chosen.insert(*name);
    }
    if chosen.is_empty() {
        return Err("no suites selected".to_string());
    }
    Ok(SUITES.iter().copied().filter(|s| chosen.contains(s)).collect())
}

/// Run one suite; engine errors become a failed suite carrying the message.
pub fn run(name: &str, setup: &Setup, cfg: &RunConfig) -> SuiteReport {
    let out = match name {
        "brackets" => brackets(setup),
        "characters" => characters(setup, cfg),
        "conformal" => conformal(setup),
        "iso" => iso(setup),
        "modular" => modular(setup, cfg),
        "n2" => n2(setup, cfg),
        "n3" => n3(setup),
        "n4" => n4(setup),
        "oracle" => oracle(setup, cfg),
        "properties" => properties(setup, cfg),
        other => return SuiteReport::failed(other, "unknown suite"),
    };
    out.unwrap_or_else(|e| SuiteReport::failed(name, e.to_string()))
}

fn calc(setup: &Setup) -> Calculus<'_> {
    Calculus::new(&setup.lattice, &setup.cocycle)
}

fn central_charge(l: &Lattice) -> Scalar {
    Scalar::ratio(3 * l.rank() as i64, 2)
}

fn signed_basis(l: &Lattice) -> Vec<LatticeVector> {
    let r = l.rank();
    (0..r).flat_map(|i| [unit(r, i), unit(r, i).iter().map(|x| -x).collect()]).collect()
}

fn basis_signs(setup: &Setup) -> Vec<Vec<i8>> {
    let r = setup.lattice.rank();
    (0..r).map(|i| (0..r).map(|j| setup.cocycle.basis(i, j)).collect()).collect()
}

fn gram_is(l: &Lattice, g: &[&[i64]]) -> bool {
    l.gram().len() == g.len() && l.gram().iter().zip(g).all(|(a, b)| a.as_slice() == *b)
}

pub fn brackets(setup: &Setup) -> Result<SuiteReport, Error> {
    let c = calc(setup);
    let l = &setup.lattice;
    let mut s = SuiteReport::new("brackets");
    s.absorb(golden::opposite_pairs(&c)?);
    s.absorb(golden::basis_pairs(&c)?);
    s.absorb(golden::gamma_identities(&c)?);
    if gram_is(l, &[&[1]]) {
        s.prefixed("unit norm table", golden::unit_norm_components(&c)?);
    }
    if gram_is(l, &[&[2]]) {
        s.prefixed("norm two table", golden::norm_two_components(&c)?);
    }
    if gram_is(l, &[&[0, -1], &[-1, 0]]) && basis_signs(setup) == [vec![1, 1], vec![-1, 1]] {
        s.absorb(golden::isotropic_displays(&c)?);
    }
    if gram_is(l, &[&[1, 0], &[0, -1]]) && basis_signs(setup) == [vec![1, 1], vec![-1, -1]] {
        s.absorb(golden::indefinite_displays(&c)?);
    }
    s.absorb(golden::rules_versus_oracle(&c)?);
    Ok(s)
}

pub fn conformal(setup: &Setup) -> Result<SuiteReport, Error> {
    let c = calc(setup);
    let l = &setup.lattice;
    let mut s = SuiteReport::new("conformal");
    s.absorb(verify_conformal(&c, &build_g(l), &central_charge(l), &signed_basis(l))?);
    Ok(s)
}

pub fn iso(setup: &Setup) -> Result<SuiteReport, Error> {
    let c = calc(setup);
    let mut s = SuiteReport::new("iso");
    s.absorb(verify_iso_vq(&c, &signed_basis(&setup.lattice))?);
    Ok(s)
}

pub fn n2(setup: &Setup, cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let Some(a) = &setup.n2 else {
        return Ok(SuiteReport::skipped("n2", "config has no `n2` operator"));
    };
    let c = calc(setup);
    let l = &setup.lattice;
    let mut s = SuiteReport::new("n2");
    if let Err(e) = check_admissible(l, a) {
        s.push("admissible", false, e, "(Aα, β) = -(α, Aβ) and A² = Id");
        return Ok(s);
    }
    s.push("admissible", true, "", "");
    let j = build_j(l, a)?;
    s.absorb(verify_n2(&c, &build_g(l), &j, &central_charge(l))?);
    let ok = verify_n2_fock(&c, &j, cfg.e_max)?;
    s.push(format!("[S^i, S^j] = 2δ_ij T on the Fock space, e_max {}", cfg.e_max), ok, "", "");
    Ok(s)
}

pub fn n4(setup: &Setup) -> Result<SuiteReport, Error> {
    let Some(a) = &setup.n4 else {
        return Ok(SuiteReport::skipped("n4", "config has no `n4` triple"));
    };
    let mut s = SuiteReport::new("n4");
    match verify_little_n4(&calc(setup), a) {
        Ok(r) => s.absorb(r),
        Err(e @ Error::Inadmissible(_)) => s.push("quaternionic triple", false, e, "A^i A^j = √−1 ε_ijk A^k"),
        Err(e) => return Err(e),
    }
    Ok(s)
}

pub fn n3(setup: &Setup) -> Result<SuiteReport, Error> {
    let l = &setup.lattice;
    let mut s = SuiteReport::new("n3");
    if gram_is(l, &[&[1]]) {
        let sl2 = sl2_super_algebra()?;
        s.prefixed("component table", sl2.check_table()?);
        s.prefixed("three fermions", verify_three_fermions(&three_fermion_algebra()?)?);
    } else if gram_is(l, &[&[2]]) {
        let alg = rank_one_even_algebra()?;
        s.prefixed("component table", alg.check_table()?);
        s.prefixed("N=3", verify_n3(&alg, &build_n3_fields())?);
    } else {
        return Ok(SuiteReport::skipped("n3", "defined for gram [[1]] and [[2]]"));
    }
    Ok(s)
}

pub fn oracle(setup: &Setup, cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let l = &setup.lattice;
    if !l.is_positive_definite() {
        return Ok(SuiteReport::skipped("oracle", "needs a positive definite lattice"));
    }
    let c = calc(setup);
    let mut s = SuiteReport::new("oracle");
    let mut fields = Vec::new();
    for i in 0..l.rank() {
        fields.push(FieldExpr::h(l.rank(), i));
    }
    fields.extend(signed_basis(l).iter().map(|v| FieldExpr::gamma(v)));
    s.absorb(superfield_table(&c, cfg.e_max, &fields)?);
    let (sec, basis) = vacuum_sector(&c, cfg.e_max)?;
    let (_, s1, _) = l0_and_susy_operators(&sec, &basis, None)?;
    let s1 = s1.ok_or_else(|| Error::Invalid("no supersymmetry operator".to_string()))?;
    s.push(format!("[S, S] = 2T on {} states", basis.len()), susy_pair_check(&sec, &basis, &[&s1]), "", "");
    s.push("charge separation", charge_separation_check(&sec, &basis)?, "", "");
    if gram_is(l, &[&[1]]) {
        s.prefixed("component table", component_table(&sl2_super_algebra()?, cfg.e_max)?);
        let alg = three_fermion_algebra()?;
        let re = alg.realization().expect("realized");
        let (sec, basis) = vacuum_sector(&Calculus::new(&re.lattice, &re.cocycle), cfg.e_max)?;
        let (p0, pp, pm) = (CompExpr::Gen(0), CompExpr::Gen(1), CompExpr::Gen(2));
        let alpha = CompExpr::norm(pp.clone(), pm.clone());
        let g = CompExpr::norm(alpha.clone(), p0.clone());
        s.prefixed("three fermions", component_fields(&alg, &sec, &basis, &[p0, pp, pm, alpha, g])?);
    }
    if gram_is(l, &[&[2]]) {
        let alg = rank_one_even_algebra()?;
        s.prefixed("component table", component_table(&alg, cfg.e_max)?);
        let re = alg.realization().expect("realized");
        let (sec, basis) = vacuum_sector(&Calculus::new(&re.lattice, &re.cocycle), cfg.e_max)?;
        let f = build_n3_fields();
        let exprs: Vec<CompExpr> = [&f.j0, &f.jp, &f.jm, &f.phi, &f.g0, &f.gp, &f.gm, &f.l].iter().map(|x| x.expr.clone()).collect();
        s.prefixed("N=3", component_fields(&alg, &sec, &basis, &exprs)?);
    }
    Ok(s)
}

fn agree_below(s: &mut SuiteReport, name: &str, closed: &QSeries, counted: &QSeries, top: Rat) {
    let exps: BTreeSet<Rat> = closed.terms().chain(counted.terms()).map(|(e, _)| *e).filter(|e| *e <= top).collect();
    let bad = exps.iter().find(|e| closed.coeff(**e) != counted.coeff(**e));
    match bad {
        None => s.push(format!("{name} through q^{top}"), !exps.is_empty(), "", ""),
        Some(e) => s.push(format!("{name}: coefficient of q^{e}"), false, closed.coeff(*e), counted.coeff(*e)),
    }
}

/// Number of Fock states with `q`-exponent at most `top`, read off a closed-form character.
fn states_below(q: &QSeries, top: Rat) -> usize {
    let n: f64 = q.terms().filter(|(e, _)| **e <= top).map(|(_, c)| c.to_f64_pair().0.abs()).sum();
    n.min(usize::MAX as f64) as usize
}

/// Largest depth `≤ order` whose truncation stays within `max_states`.
fn affordable_depth(q: &QSeries, lead: Rat, order: Rat, max_states: usize) -> Option<Rat> {
    let mut d = order;
    while d > Rat::from(0) {
        if states_below(q, lead + d) <= max_states {
            return Some(d);
        }
        d = (d - Rat::from(1)).ceil();
    }
    None
}

fn compare_sector(s: &mut SuiteReport, name: &str, closed: &QSeries, sec: FockSector, super_trace: bool, lead: Rat, depth: Rat) -> Result<(), Error> {
    let basis = enumerate_basis(&sec)?;
    agree_below(s, name, closed, &character_from_basis(&sec, &basis, super_trace), lead + depth);
    Ok(())
}

pub fn characters(setup: &Setup, cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let l = &setup.lattice;
    if !l.is_even() || !l.is_positive_definite() {
        return Ok(SuiteReport::skipped("characters", "needs an even positive definite lattice"));
    }
    let mut s = SuiteReport::new("characters");
    let shift = Rat::new(l.rank() as i64, 16);
    for mu in &discriminant_group(l).coset_reps {
        let tag: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
        let tag = format!("[{}]", tag.join(","));
        let (ns, sup, tw) = character_suite(l, mu, cfg.depth() + 3)?;
        let sectors = [(&ns, false), (&tw, true)];
        for (closed, twisted) in sectors {
            let lead = closed.min_exponent().unwrap_or_default();
            let Some(depth) = affordable_depth(closed, lead, cfg.order, cfg.max_states) else {
                s.push(format!("{tag} truncation within {} states", cfg.max_states), false, "", "");
                continue;
            };
            let note = if depth < cfg.order { format!(" (depth lowered to {depth} by the state budget)") } else { String::new() };
            let e_max = lead + depth + shift;
            let mu = mu.clone();
            if twisted {
                let sec = FockSector::twisted(l.clone(), setup.cocycle.clone(), mu, e_max);
                compare_sector(&mut s, &format!("chi^tw {tag}{note}"), &tw, sec, false, lead, depth)?;
            } else {
                let sec = FockSector::ns(l.clone(), setup.cocycle.clone(), mu, e_max);
                let basis = enumerate_basis(&sec)?;
                agree_below(&mut s, &format!("chi {tag}{note}"), &ns, &character_from_basis(&sec, &basis, false), lead + depth);
                agree_below(&mut s, &format!("chi^s {tag}{note}"), &sup, &character_from_basis(&sec, &basis, true), lead + depth);
            }
        }
    }
    partitions(&mut s, 20);
    Ok(s)
}

/// `p` and `sp` product formulas against brute-force enumeration for `j ≤ max`.
pub fn partitions(s: &mut SuiteReport, max: u32) {
    let (p, sp) = (p_series(max + 1), sp_series(max + 1));
    let mut bad = None;
    for j in 0..=max {
        let (a, b) = partition_counts(j);
        let e = Rat::from(j as i64);
        if p.coeff(e) != Scalar::int(a) || sp.coeff(e) != Scalar::int(b) {
            bad = Some((j, format!("p {} sp {}", p.coeff(e), sp.coeff(e)), format!("p {a} sp {b}")));
            break;
        }
    }
    match bad {
        None => s.push(format!("p and sp against enumeration for j <= {max}"), true, "", ""),
        Some((j, x, y)) => s.push(format!("p and sp at j = {j}"), false, x, y),
    }
}

pub fn modular(setup: &Setup, cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let l = &setup.lattice;
    if !l.is_even() || !l.is_positive_definite() {
        return Ok(SuiteReport::skipped("modular", "needs an even positive definite lattice"));
    }
    let mut s = SuiteReport::new("modular");
    for id in ModularIdentity::ALL {
        for &tau in &cfg.taus {
            let r = modular_check(l, id, tau, cfg.tol)?;
            s.push(format!("{} at tau = {}{:+}i", id.name(), tau.re, tau.im), r.passed(), format!("max relative error {:e}", r.max_rel_error), format!("tol {:e}", r.tol));
        }
    }
    Ok(s)
}

fn random_vector(rng: &mut ChaCha8Rng, r: usize) -> Vec<i64> {
    (0..r).map(|_| rng.random_range(-5i64..=5)).collect()
}

fn random_item(rng: &mut ChaCha8Rng, r: usize, kinds: u8) -> FieldExpr {
    let n = 4 * r;
    low_depth(r, rng.random_range(0..kinds), rng.random_range(0..n), rng.random_range(0..n))
}

pub fn properties(setup: &Setup, cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let c = calc(setup);
    let l = &setup.lattice;
    let r = l.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut s = SuiteReport::new("properties");
    let (mut skew, mut agree, mut jac, mut delegated) = (0, 0, 0, 0);
    let fail = |s: &mut SuiteReport, name: String| s.push(name, false, "", "");
    for _ in 0..PROPERTY_SAMPLES {
        let (a, b) = (random_item(&mut rng, r, 3), random_item(&mut rng, r, 3));
        match skew_holds(&c, &a, &b) {
            Ok(true) => skew += 1,
            Ok(false) => fail(&mut s, format!("skew-symmetry on ({a}, {b})")),
            Err(Error::Delegate(_)) => delegated += 1,
            Err(e) => return Err(e),
        }
        match oracle_agrees(&c, &a, &b) {
            Ok(true) => agree += 1,
            Ok(false) => fail(&mut s, format!("rules = oracle on ({a}, {b})")),
            Err(Error::Delegate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    for _ in 0..PROPERTY_SAMPLES {
        let (a, b, d) = (random_item(&mut rng, r, 2), random_item(&mut rng, r, 2), random_item(&mut rng, r, 2));
        match jacobi_defect(&c, &a, &b, &d) {
            Ok(x) if x.is_empty() => jac += 1,
            Ok(_) => fail(&mut s, format!("Jacobi on ({a}, {b}, {d})")),
            Err(Error::Delegate(_)) => delegated += 1,
            Err(e) => return Err(e),
        }
    }
    s.push(format!("skew-symmetry on {skew} random pairs ({delegated} delegated draws skipped)"), skew > 0, "", "");
    s.push(format!("rules = oracle on {agree} random pairs"), agree > 0, "", "");
    s.push(format!("Jacobi on {jac} random triples"), jac > 0, "", "");

    let coc = &setup.cocycle;
    let holds = |a: &[i64], b: &[i64]| coc.epsilon(a, b) == locality_sign(l, a, b) * coc.epsilon(b, a);
    let basis_ok = (0..r).all(|i| (0..r).all(|j| holds(&unit(r, i), &unit(r, j))));
    s.push("cocycle locality on all basis pairs", basis_ok, "", "");
    let mut random_ok = true;
    for _ in 0..COCYCLE_SAMPLES {
        let (a, b) = (random_vector(&mut rng, r), random_vector(&mut rng, r));
        if !holds(&a, &b) {
            s.push(format!("cocycle locality on ({a:?}, {b:?})"), false, coc.epsilon(&a, &b), locality_sign(l, &a, &b) * coc.epsilon(&b, &a));
            random_ok = false;
        }
    }
    if random_ok {
        s.push(format!("cocycle locality on {COCYCLE_SAMPLES} random pairs"), true, "", "");
    }
    let check_build = build_cocycle(l, Some(basis_signs(setup))).is_ok();
    s.push("basis signs rebuild a valid cocycle", check_build, "", "");

    let std = Conventions::STANDARD;
    s.push("pins hold under the standard conventions", n2_pin(std)? && gamma_g_pin(std)? && chi_pin(std)?, "", "");
    let flip_chi = Conventions { chi_squared: -std.chi_squared, ..std };
    s.push("flipping χ² breaks the pins", !pins_hold(flip_chi).unwrap_or(false), "", "");
    let flip_berezin = Conventions { berezin: -std.berezin, ..std };
    s.push("flipping the Berezin sign breaks the pins", !pins_hold(flip_berezin).unwrap_or(false), "", "");
    Ok(s)
}
