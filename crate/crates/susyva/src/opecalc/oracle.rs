//! Re-verification of bracket identities as commutators of mode matrices on a
//! truncated Fock space.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::component::{CompExpr, ComponentAlgebra, ComponentBracket};
use super::{Calculus, FieldExpr, Report};
use crate::exactnum::LambdaMonomial;
use crate::fock::sector::{field_mode_matrix, FockBasis};
use crate::fock::{commutator_check, enumerate_basis, FockSector, State};
use crate::lattice::to_rat;
use crate::{Error, Rat};

/// Vacuum sector of `calc`'s lattice truncated at `e_max`, with its basis.
pub fn vacuum_sector(calc: &Calculus<'_>, e_max: Rat) -> Result<(FockSector, FockBasis), Error> {
    let lat = calc.lattice();
    let sec = FockSector::ns(lat.clone(), calc.cocycle().clone(), to_rat(&alloc::vec![0; lat.rank()]), e_max);
    let basis = enumerate_basis(&sec)?;
    Ok((sec, basis))
}

/// Mode indices `(n, m)` exercised for each pair.
pub const MODES: [(i64, i64); 5] = [(0, 0), (1, 0), (0, -1), (2, -1), (1, 1)];

/// `[a_(n|M), b_(m|N)]` against the route-A bracket `[a_Λ b]` for all `M, N` and [`MODES`].
pub fn superfield_pair(
    calc: &Calculus<'_>,
    sec: &FockSector,
    basis: &FockBasis,
    a: &FieldExpr,
    b: &FieldExpr,
) -> Result<Report, Error> {
    let expected = calc.susy_bracket_states(a, b)?;
    let (sa, sb) = (calc.state(a)?, calc.state(b)?);
    let (pa, pb) = (calc.parity(a)?, calc.parity(b)?);
    let mut report = Report::default();
    for big_m in 0..2u8 {
        for big_n in 0..2u8 {
            let mut ok = true;
            let mut detail = alloc::string::String::new();
            let mut cols = 0;
            for (n, m) in MODES {
                let ma = field_mode_matrix(sec, basis, &sa, pa, n, big_m)?;
                let mb = field_mode_matrix(sec, basis, &sb, pb, m, big_n)?;
                let r = commutator_check(sec, basis, &ma, &mb, &expected)?;
                cols += r.interior_columns;
                if !r.mismatches.is_empty() {
                    ok = false;
                    detail = format!("({n}|{big_m}),({m}|{big_n}): {}", r.mismatches[0].1);
                }
            }
            report.push(format!("[{a}_({big_m}) , {b}_({big_n})] on {cols} columns"), ok && cols > 0, detail, "");
        }
    }
    Ok(report)
}

/// `[x_(n), y_(m)]` against an ordinary bracket of realized component fields.
pub fn component_pair(
    alg: &ComponentAlgebra,
    sec: &FockSector,
    basis: &FockBasis,
    x: &CompExpr,
    y: &CompExpr,
    bracket: &ComponentBracket,
) -> Result<(bool, usize), Error> {
    let (sx, sy) = (alg.state(x)?, alg.state(y)?);
    let (px, py) = (alg.parity(x)?, alg.parity(y)?);
    let mut expected: BTreeMap<LambdaMonomial, State> = BTreeMap::new();
    for (j, e) in bracket {
        let st = alg.state(e)?;
        if !st.is_zero() {
            expected.insert(LambdaMonomial::new(*j, 1), st);
        }
    }
    let mut ok = true;
    let mut cols = 0;
    for (n, m) in MODES {
        let mx = field_mode_matrix(sec, basis, &sx, px, n, 1)?;
        let my = field_mode_matrix(sec, basis, &sy, py, m, 1)?;
        let r = commutator_check(sec, basis, &mx, &my, &expected)?;
        cols += r.interior_columns;
        ok &= r.mismatches.is_empty();
    }
    Ok((ok && cols > 0, cols))
}

/// All ordered pairs from `fields` through [`superfield_pair`].
pub fn superfield_table(calc: &Calculus<'_>, e_max: Rat, fields: &[FieldExpr]) -> Result<Report, Error> {
    let (sec, basis) = vacuum_sector(calc, e_max)?;
    let mut report = Report::default();
    let pairs: Vec<(&FieldExpr, &FieldExpr)> = fields.iter().flat_map(|a| fields.iter().map(move |b| (a, b))).collect();
    for (a, b) in pairs {
        report.extend(superfield_pair(calc, &sec, &basis, a, b)?);
    }
    Ok(report)
}

/// Every generator pair of a realized algebra through [`component_pair`].
pub fn component_table(alg: &ComponentAlgebra, e_max: Rat) -> Result<Report, Error> {
    let re = alg.realization().ok_or_else(|| Error::Invalid(alloc::string::String::from("algebra has no realization")))?;
    let calc = Calculus::new(&re.lattice, &re.cocycle);
    let (sec, basis) = vacuum_sector(&calc, e_max)?;
    let gens: Vec<CompExpr> = (0..alg.names().len()).map(CompExpr::Gen).collect();
    component_fields(alg, &sec, &basis, &gens)
}

/// Every ordered pair of `fields` through [`component_pair`].
pub fn component_fields(alg: &ComponentAlgebra, sec: &FockSector, basis: &FockBasis, fields: &[CompExpr]) -> Result<Report, Error> {
    let mut report = Report::default();
    for x in fields {
        for y in fields {
            let br = alg.ordinary_bracket(x, y)?;
            let (ok, cols) = component_pair(alg, sec, basis, x, y, &br)?;
            report.push(format!("[{}_λ {}] on {cols} columns", alg.render(x), alg.render(y)), ok, alg.render_bracket(&br), "");
        }
    }
    Ok(report)
}
