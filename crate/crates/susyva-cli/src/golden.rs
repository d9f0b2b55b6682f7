//! Reference bracket tables checked by the `brackets` suite.

use std::fmt::Display;

use susyva::lattice::unit;
use susyva::opecalc::checks::atoms;
use susyva::opecalc::structures::{build_g, fmt_series};
use susyva::opecalc::{BracketResult, Calculus, FieldExpr, LambdaSeries, Report};
use susyva::{Error, Scalar};

fn n(k: i64) -> Scalar {
    Scalar::int(k)
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::ratio(a, b)
}

fn vac() -> FieldExpr {
    FieldExpr::Vacuum
}

fn g(v: &[i64]) -> FieldExpr {
    FieldExpr::gamma(v)
}

fn norm(a: FieldExpr, b: FieldExpr) -> FieldExpr {
    FieldExpr::norm(a, b)
}

fn sum(v: Vec<FieldExpr>) -> FieldExpr {
    FieldExpr::sum(v)
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Collapse a multi-line rendering onto one line.
pub fn one_line(x: impl Display) -> String {
    let s = x.to_string();
    let parts: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ; ")
    }
}

/// `[a Λ b]` by the rules, or by the oracle when the rules delegate.
pub fn bracket(calc: &Calculus<'_>, a: &FieldExpr, b: &FieldExpr) -> Result<BracketResult, Error> {
    match calc.susy_bracket(a, b) {
        Err(Error::Delegate(_)) => calc.oracle_bracket(a, b),
        r => r,
    }
}

fn check(r: &mut Report, calc: &Calculus<'_>, name: &str, a: &FieldExpr, b: &FieldExpr, want: &[(u32, u8, FieldExpr)]) -> Result<(), Error> {
    let got = bracket(calc, a, b)?;
    let want = calc.bracket_from(want)?;
    let ok = calc.bracket_equal(&got, &want)?;
    r.push(format!("{name}: [{a} Λ {b}]"), ok, one_line(&got), one_line(&want));
    Ok(())
}

#[derive(Clone, Copy)]
enum Comp {
    AB,
    SaB,
    ASb,
    SaSb,
}

fn check_comp(r: &mut Report, calc: &Calculus<'_>, name: &str, a: &FieldExpr, b: &FieldExpr, c: Comp, want: &[(u32, FieldExpr)]) -> Result<(), Error> {
    let br = calc.susy_bracket(a, b)?;
    let ex = calc.expand_components(&br, a, b)?;
    let got = match c {
        Comp::AB => ex.a_b,
        Comp::SaB => ex.sa_b,
        Comp::ASb => ex.a_sb,
        Comp::SaSb => ex.sa_sb,
    };
    let want: LambdaSeries = want.iter().cloned().collect();
    let ok = calc.series_equal(&got, &want)?;
    r.push(name.to_string(), ok, fmt_series(&got), fmt_series(&want));
    Ok(())
}

fn check_equal(r: &mut Report, calc: &Calculus<'_>, name: String, x: &FieldExpr, y: &FieldExpr) -> Result<(), Error> {
    let ok = calc.equal(x, y)?;
    r.push(name, ok, calc.canonicalize(x)?, calc.canonicalize(y)?);
    Ok(())
}

/// The nine component brackets of `α, Γ_{±α}` on `(α,α) = 1`.
pub fn unit_norm_components(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let h = FieldExpr::h(1, 0);
    let (gp, gm) = (g(&[1]), g(&[-1]));
    check_comp(&mut r, calc, "[psi0_λ psi0] = 1", &h, &h, Comp::AB, &[(0, vac())])?;
    check_comp(&mut r, calc, "[alpha_λ alpha] = λ", &h, &h, Comp::SaSb, &[(1, vac())])?;
    for (gam, s, tag) in [(&gp, 1, "+"), (&gm, -1, "-")] {
        let sg = if s > 0 { "" } else { "-" };
        check_comp(&mut r, calc, &format!("[alpha_λ psi{tag}] = {sg}psi{tag}"), &h, gam, Comp::SaB, &[(0, gam.clone().scale(n(s)))])?;
        check_comp(&mut r, calc, &format!("[psi0_λ psi{tag}] = 0"), &h, gam, Comp::AB, &[])?;
        check_comp(&mut r, calc, &format!("[psi0_λ phi{tag}] = {sg}psi{tag}"), &h, gam, Comp::ASb, &[(0, gam.clone().scale(n(s)))])?;
        check_comp(&mut r, calc, &format!("[alpha_λ phi{tag}] = {sg}phi{tag}"), &h, gam, Comp::SaSb, &[(0, gam.clone().s().scale(n(s)))])?;
    }
    check_comp(&mut r, calc, "[psi+_λ psi-] = 1", &gp, &gm, Comp::AB, &[(0, vac())])?;
    check_comp(&mut r, calc, "[psi+_λ phi-] = psi0", &gp, &gm, Comp::ASb, &[(0, h.clone())])?;
    check_comp(&mut r, calc, "[psi-_λ phi+] = -psi0", &gm, &gp, Comp::ASb, &[(0, h.clone().scale(n(-1)))])?;
    check_comp(&mut r, calc, "[phi+_λ phi-] = alpha + λ", &gp, &gm, Comp::SaSb, &[(0, h.clone().s()), (1, vac())])?;
    Ok(r)
}

/// The eleven component brackets of `α, Γ_{±α}` on `(α,α) = 2`.
pub fn norm_two_components(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let a = FieldExpr::h(1, 0);
    let h = a.clone().s();
    let (ep, em) = (g(&[1]), g(&[-1]));
    let a_h = norm(a.clone(), h.clone());
    check_comp(&mut r, calc, "[e+_λ e-] = h + λ", &ep, &em, Comp::AB, &[(0, h.clone()), (1, vac())])?;
    check_comp(&mut r, calc, "[e+_λ psi-] = -:psi0 h: - λ psi0", &ep, &em, Comp::ASb, &[(0, a_h.clone().scale(n(-1))), (1, a.clone().scale(n(-1)))])?;
    check_comp(&mut r, calc, "[e-_λ psi+] = -:psi0 h: + λ psi0", &em, &ep, Comp::ASb, &[(0, a_h.scale(n(-1))), (1, a.clone())])?;
    check_comp(
        &mut r,
        calc,
        "[psi+_λ psi-] = -Th - :hh: + :psi0 Tpsi0: - 2λh - λ²",
        &ep,
        &em,
        Comp::SaSb,
        &[
            (0, sum(vec![h.clone().t().scale(n(-1)), norm(h.clone(), h.clone()).scale(n(-1)), norm(a.clone(), a.clone().t())])),
            (1, h.clone().scale(n(-2))),
            (2, vac().scale(n(-1))),
        ],
    )?;
    for (gam, s, tag) in [(&ep, 2, "+"), (&em, -2, "-")] {
        check_comp(&mut r, calc, &format!("[h_λ e{tag}] = {s}e{tag}"), &a, gam, Comp::SaB, &[(0, gam.clone().scale(n(s)))])?;
        check_comp(&mut r, calc, &format!("[h_λ psi{tag}] = {s}psi{tag}"), &a, gam, Comp::SaSb, &[(0, gam.clone().s().scale(n(s)))])?;
        check_comp(&mut r, calc, &format!("[psi0_λ psi{tag}] = {s}e{tag}"), &a, gam, Comp::ASb, &[(0, gam.clone().scale(n(s)))])?;
        check_comp(&mut r, calc, &format!("[psi0_λ e{tag}] = 0"), &a, gam, Comp::AB, &[])?;
    }
    check_comp(&mut r, calc, "[h_λ h] = 2λ", &a, &a, Comp::SaSb, &[(1, vac().scale(n(2)))])?;
    check_comp(&mut r, calc, "[psi0_λ psi0] = 2", &a, &a, Comp::AB, &[(0, vac().scale(n(2)))])?;
    check_comp(&mut r, calc, "[h_λ psi0] = 0", &a, &a, Comp::SaB, &[])?;
    Ok(r)
}

/// `[Γ_α Λ Γ_{−α}]` for each basis vector of norm 1 or 2, written for `ε(α,−α) = 1`.
pub fn opposite_pairs(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let lat = calc.lattice();
    for i in 0..lat.rank() {
        let v = unit(lat.rank(), i);
        let a = FieldExpr::cartan(&v);
        match lat.g(i, i) {
            1 => check(&mut r, calc, "unit norm", &g(&v), &g(&neg(&v)), &[(0, 0, a), (0, 1, vac())])?,
            2 => check(
                &mut r,
                calc,
                "norm two",
                &g(&v),
                &g(&neg(&v)),
                &[
                    (0, 0, sum(vec![a.clone().t(), norm(a.clone(), a.clone().s())])),
                    (0, 1, a.clone().s()),
                    (1, 0, a),
                    (1, 1, vac()),
                ],
            )?,
            _ => {}
        }
    }
    Ok(r)
}

/// Brackets of `Γ_x, Γ_y` for `x, y` among `±` basis vectors with `x ≠ ±y`.
pub fn basis_pairs(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let lat = calc.lattice();
    let rank = lat.rank();
    let vecs: Vec<Vec<i64>> = (0..rank).flat_map(|i| [unit(rank, i), neg(&unit(rank, i))]).collect();
    for x in &vecs {
        for y in &vecs {
            if x == y || *x == neg(y) {
                continue;
            }
            let p = lat.pairing_int(x, y)?;
            let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            if p == -1 {
                let e = n(calc.cocycle().epsilon(x, y) as i64);
                let want = [(0, 0, norm(FieldExpr::cartan(x), g(&s)).scale(e.clone())), (0, 1, g(&s).scale(e))];
                check(&mut r, calc, "pairing -1", &g(x), &g(y), &want)?;
            } else if p >= 0 {
                check(&mut r, calc, "non-negative pairing", &g(x), &g(y), &[])?;
            } else {
                let rules = bracket(calc, &g(x), &g(y))?;
                let oracle = calc.oracle_bracket(&g(x), &g(y))?;
                let ok = calc.bracket_equal(&rules, &oracle)?;
                r.push(format!("pairing {p}: [{} Λ {}] rules = oracle", g(x), g(y)), ok, one_line(&rules), one_line(&oracle));
            }
        }
    }
    Ok(r)
}

/// `SΓ_α = :αΓ_α:`, `S²Γ_α = TΓ_α`, `:(SΓ_α) α: = ±(α,α)TΓ_α` and brackets with `G`.
pub fn gamma_identities(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let lat = calc.lattice();
    let rank = lat.rank();
    let gg = build_g(lat);
    for i in 0..rank {
        for v in [unit(rank, i), neg(&unit(rank, i))] {
            let ga = g(&v);
            let alpha = FieldExpr::cartan(&v);
            let k = lat.pairing_int(&v, &v)?;
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            check_equal(&mut r, calc, format!("S{ga} = :{alpha} {ga}:"), &ga.clone().s(), &norm(alpha.clone(), ga.clone()))?;
            check_equal(&mut r, calc, format!("SS{ga} = T{ga}"), &ga.clone().s().s(), &ga.clone().t())?;
            check_equal(&mut r, calc, format!(":S{ga} {alpha}:"), &norm(ga.clone().s(), alpha.clone()), &ga.clone().t().scale(n(sign * k)))?;
            let sg = n(sign);
            let want = [
                (0, 0, sum(vec![norm(alpha.clone().s(), ga.clone()), ga.clone().t().scale(n(-k))]).scale(sg.clone())),
                (0, 1, ga.clone().s().scale(-sg.clone())),
                (1, 0, ga.clone().scale(sg * n(-k))),
            ];
            check(&mut r, calc, "Gamma with G", &ga, &gg, &want)?;
            let back = [(0, 0, ga.clone().t().scale(n(2))), (1, 0, ga.clone().scale(n(k))), (0, 1, ga.clone().s())];
            check(&mut r, calc, "G with Gamma", &gg, &ga, &back)?;
        }
    }
    Ok(r)
}

/// The isotropic rank-two displays for gram `[[0,-1],[-1,0]]` and basis signs `[[1,1],[-1,1]]`.
pub fn isotropic_displays(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let ab = g(&[1, 1]);
    check(&mut r, calc, "isotropic", &g(&[1, 0]), &g(&[0, 1]), &[(0, 0, norm(FieldExpr::cartan(&[1, 0]), ab.clone())), (0, 1, ab.clone())])?;
    let g2 = g(&[2, 2]);
    let s = FieldExpr::cartan(&[1, 1]);
    let half = q(-1, 2);
    check(
        &mut r,
        calc,
        "isotropic",
        &ab,
        &ab,
        &[
            (0, 0, sum(vec![g2.clone().s().t().scale(half.clone()), norm(s, g2.clone().t()).scale(q(1, 2))])),
            (0, 1, g2.clone().t().scale(half.clone())),
            (1, 0, g2.clone().s().scale(half)),
            (1, 1, g2.scale(n(-1))),
        ],
    )?;
    Ok(r)
}

/// The displays for gram `[[1,0],[0,-1]]` and basis signs `[[1,1],[-1,-1]]`.
pub fn indefinite_displays(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let (ap, am) = ([1, 0], [0, 1]);
    let (nap, nam) = ([-1, 0], [0, -1]);
    check(&mut r, calc, "indefinite", &g(&ap), &g(&ap), &[])?;
    check(&mut r, calc, "indefinite", &g(&nap), &g(&nap), &[])?;
    check(&mut r, calc, "indefinite", &g(&ap), &g(&nap), &[(0, 0, FieldExpr::cartan(&ap)), (0, 1, vac())])?;
    check(&mut r, calc, "indefinite", &g(&am), &g(&nam), &[])?;
    check(&mut r, calc, "indefinite", &g(&nam), &g(&am), &[])?;
    let two = g(&[0, 2]);
    check(&mut r, calc, "indefinite", &g(&am), &g(&am), &[(0, 0, two.clone().s().scale(q(-1, 2))), (0, 1, two.scale(n(-1)))])?;
    Ok(r)
}

/// Rules against the Fock oracle on every pair of generators.
pub fn rules_versus_oracle(calc: &Calculus<'_>) -> Result<Report, Error> {
    let mut r = Report::default();
    let at = atoms(calc.lattice().rank());
    for a in &at {
        for b in &at {
            let oracle = calc.oracle_bracket(a, b)?;
            match calc.susy_bracket(a, b) {
                Ok(rules) => {
                    let ok = calc.bracket_equal(&rules, &oracle)?;
                    r.push(format!("rules = oracle: [{a} Λ {b}]"), ok, one_line(&rules), one_line(&oracle));
                }
                Err(Error::Delegate(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(r)
}
