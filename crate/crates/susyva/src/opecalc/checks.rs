//! Structural identities of the bracket engine: skew-symmetry, Jacobi, agreement
//! with the Fock oracle and convention pins.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::structures::{build_g, build_j, verify_n2};
use super::{Calculus, Conventions, FieldExpr};
use crate::exactnum::Scalar;
use crate::fock::State;
use crate::lattice::{build_cocycle, unit, Lattice};
use crate::Error;

/// Generators `h_i`, `Sh_i`, `Γ_{±α_i}`, `SΓ_{±α_i}`.
pub fn atoms(rank: usize) -> Vec<FieldExpr> {
    let mut out = Vec::new();
    for i in 0..rank {
        out.push(FieldExpr::h(rank, i));
        out.push(FieldExpr::h(rank, i).s());
        for s in [1, -1] {
            let mut e = vec![0; rank];
            e[i] = s;
            out.push(FieldExpr::gamma(&e));
            out.push(FieldExpr::gamma(&e).s());
        }
    }
    out
}

/// `(kind, i, j)`: kind 0 is `atoms[i]`, 1 is `T atoms[i]`, otherwise `:atoms[i] atoms[j]:`.
pub fn low_depth(rank: usize, kind: u8, i: usize, j: usize) -> FieldExpr {
    let at = atoms(rank);
    let (x, y) = (at[i % at.len()].clone(), at[j % at.len()].clone());
    match kind {
        0 => x,
        1 => x.t(),
        _ => FieldExpr::norm(x, y),
    }
}

fn sign(odd: bool) -> Scalar {
    Scalar::int(if odd { -1 } else { 1 })
}

/// `[b_Λ a]` computed directly equals skew-symmetry applied to `[a_Λ b]`.
pub fn skew_holds(calc: &Calculus<'_>, a: &FieldExpr, b: &FieldExpr) -> Result<bool, Error> {
    let ab = calc.susy_bracket_states(a, b)?;
    let ba = calc.susy_bracket_states(b, a)?;
    Ok(ba == calc.skew_transform(&ab, calc.parity(a)?, calc.parity(b)?))
}

/// The rules engine agrees with the Fock oracle on `[a_Λ b]`.
pub fn oracle_agrees(calc: &Calculus<'_>, a: &FieldExpr, b: &FieldExpr) -> Result<bool, Error> {
    let rules = calc.susy_bracket(a, b)?;
    calc.bracket_equal(&rules, &calc.oracle_bracket(a, b)?)
}

/// The ordinary bracket `[x_λ y]`, the `χ`-part of `[x_Λ y]`.
pub fn ordinary(calc: &Calculus<'_>, x: &FieldExpr, y: &FieldExpr) -> Result<BTreeMap<u32, FieldExpr>, Error> {
    let br = calc.susy_bracket(x, y)?;
    Ok(br.terms.iter().filter(|(m, _)| m.chi == 1).map(|(m, e)| (m.j, e.clone())).collect())
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `[a_λ[b_μ c]] − (−1)^{p(a)p(b)}[b_μ[a_λ c]] − [[a_λ b]_{λ+μ} c]`, keyed by powers of `(λ, μ)`.
pub fn jacobi_defect(
    calc: &Calculus<'_>,
    a: &FieldExpr,
    b: &FieldExpr,
    c: &FieldExpr,
) -> Result<BTreeMap<(u32, u32), State>, Error> {
    let (pa, pb) = (calc.parity(a)?, calc.parity(b)?);
    let mut out: BTreeMap<(u32, u32), State> = BTreeMap::new();
    let mut add = |k: (u32, u32), s: &State, c: &Scalar| out.entry(k).or_default().add_state(s, c);
    for (k, x) in ordinary(calc, b, c)? {
        for (j, y) in ordinary(calc, a, &x)? {
            add((j, k), &calc.state(&y)?, &Scalar::one());
        }
    }
    for (k, x) in ordinary(calc, a, c)? {
        for (j, y) in ordinary(calc, b, &x)? {
            add((k, j), &calc.state(&y)?, &-sign(pa && pb));
        }
    }
    for (j, z) in ordinary(calc, a, b)? {
        for (m, w) in ordinary(calc, &z, c)? {
            let ws = calc.state(&w)?;
            for i in 0..=m {
                add((j + i, m - i), &ws, &-Scalar::int(binom(m, i)));
            }
        }
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}

/// `[J_Λ J] = G + λχ` and `J` primary on the hyperbolic plane with `A = diag(1, −1)`.
pub fn n2_pin(conv: Conventions) -> Result<bool, Error> {
    let l = Lattice::new(vec![vec![0, 1], vec![1, 0]])?;
    let c = build_cocycle(&l, None)?;
    let calc = Calculus::with_conventions(&l, &c, conv);
    let a = vec![vec![Scalar::int(1), Scalar::int(0)], vec![Scalar::int(0), Scalar::int(-1)]];
    let j = build_j(&l, &a)?;
    Ok(verify_n2(&calc, &build_g(&l), &j, &Scalar::int(3))?.passed())
}

/// `[Γ_α Λ G] = :(Sα)Γ_α: − χSΓ_α − 2(λ+T)Γ_α` on `(α,α) = 2`.
pub fn gamma_g_pin(conv: Conventions) -> Result<bool, Error> {
    let l = Lattice::new(vec![vec![2]])?;
    let c = build_cocycle(&l, None)?;
    let calc = Calculus::with_conventions(&l, &c, conv);
    let ga = FieldExpr::gamma(&[1]);
    let alpha = FieldExpr::cartan(&[1]);
    let want = calc.bracket_from(&[
        (0, 0, FieldExpr::sum(vec![FieldExpr::norm(alpha.s(), ga.clone()), ga.clone().t().scale(Scalar::int(-2))])),
        (0, 1, ga.clone().s().scale(Scalar::int(-1))),
        (1, 0, ga.clone().scale(Scalar::int(-2))),
    ])?;
    match calc.susy_bracket(&ga, &build_g(&l)) {
        Ok(got) => calc.bracket_equal(&got, &want),
        Err(Error::Delegate(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `[Sα_Λ SΓ_α]` from the rules against the Fock oracle on `(α,α) = 2`.
pub fn chi_pin(conv: Conventions) -> Result<bool, Error> {
    let l = Lattice::new(vec![vec![2]])?;
    let c = build_cocycle(&l, None)?;
    let calc = Calculus::with_conventions(&l, &c, conv);
    oracle_agrees(&calc, &FieldExpr::h(1, 0).s(), &FieldExpr::gamma(&unit(1, 0)).s())
}

/// All pins under `conv`.
pub fn pins_hold(conv: Conventions) -> Result<bool, Error> {
    Ok(n2_pin(conv)? && gamma_g_pin(conv)? && chi_pin(conv)?)
}
