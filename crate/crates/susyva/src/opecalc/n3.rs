//! Component algebras of rank-one lattices: three free fermions, the super
//! affine `sl₂` table, and the `N=3` fields of central charge `3/2`.
//!
//! Coefficients in `ℚ(√2)` are carried as `s^k c` with `s = 1/√2`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::component::{CompExpr, ComponentAlgebra, ComponentBracket};
use super::{Calculus, FieldExpr, Report};
use crate::exactnum::Scalar;
use crate::lattice::{build_cocycle, Lattice};
use crate::Error;

/// `λ`-polynomial from `(power, expr)` pairs.
pub fn lam(terms: &[(u32, CompExpr)]) -> ComponentBracket {
    let mut out = ComponentBracket::new();
    for (j, e) in terms {
        match out.remove(j) {
            None => {
                out.insert(*j, e.clone());
            }
            Some(prev) => {
                out.insert(*j, CompExpr::sum(vec![prev, e.clone()]));
            }
        }
    }
    out
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn ratio(a: i64, b: i64) -> Scalar {
    Scalar::ratio(a, b)
}

fn realize(lat: &Lattice, fields: &[FieldExpr]) -> Result<Vec<crate::fock::State>, Error> {
    let cocycle = build_cocycle(lat, None)?;
    let calc = Calculus::new(lat, &cocycle);
    fields.iter().map(|f| calc.state(f)).collect()
}

fn with_rank_one(alg: ComponentAlgebra, norm: i64, fields: &[FieldExpr]) -> Result<ComponentAlgebra, Error> {
    let lat = Lattice::new(vec![vec![norm]])?;
    let states = realize(&lat, fields)?;
    let cocycle = build_cocycle(&lat, None)?;
    alg.with_realization(lat, cocycle, states)
}

/// `ψ⁰, ψ^±` with `[ψ⁰_λ ψ⁰] = [ψ⁺_λ ψ⁻] = 1`, realized in `V_ℤ` by `h` and `Γ_{±1}`.
pub fn three_fermion_algebra() -> Result<ComponentAlgebra, Error> {
    let mut alg = ComponentAlgebra::new(&[("psi0", true), ("psi+", true), ("psi-", true)]).with_others_zero();
    alg.declare("psi0", "psi0", lam(&[(0, CompExpr::Vac)]))?;
    alg.declare("psi+", "psi-", lam(&[(0, CompExpr::Vac)]))?;
    with_rank_one(alg, 1, &[FieldExpr::h(1, 0), FieldExpr::gamma(&[1]), FieldExpr::gamma(&[-1])])
}

/// Components of `α` and `Γ_{±α}` on `(α,α) = 1`: `ψ⁰, α` and `ψ^±, φ^±`.
pub fn sl2_super_algebra() -> Result<ComponentAlgebra, Error> {
    let mut alg = ComponentAlgebra::new(&[
        ("psi0", true),
        ("alpha", false),
        ("psi+", true),
        ("psi-", true),
        ("phi+", false),
        ("phi-", false),
    ])
    .with_others_zero();
    let g = CompExpr::Gen;
    let one = CompExpr::Vac;
    let table: Vec<(&str, &str, ComponentBracket)> = vec![
        ("psi0", "psi0", lam(&[(0, one.clone())])),
        ("alpha", "alpha", lam(&[(1, one.clone())])),
        ("alpha", "psi+", lam(&[(0, g(2))])),
        ("alpha", "psi-", lam(&[(0, g(3).scale(int(-1)))])),
        ("psi0", "phi+", lam(&[(0, g(2))])),
        ("psi0", "phi-", lam(&[(0, g(3).scale(int(-1)))])),
        ("alpha", "phi+", lam(&[(0, g(4))])),
        ("alpha", "phi-", lam(&[(0, g(5).scale(int(-1)))])),
        ("psi+", "psi-", lam(&[(0, one.clone())])),
        ("psi+", "phi-", lam(&[(0, g(0))])),
        ("psi-", "phi+", lam(&[(0, g(0).scale(int(-1)))])),
        ("phi+", "phi-", lam(&[(0, g(1)), (1, one)])),
    ];
    for (a, b, br) in table {
        alg.declare(a, b, br)?;
    }
    let h = FieldExpr::h(1, 0);
    let (gp, gm) = (FieldExpr::gamma(&[1]), FieldExpr::gamma(&[-1]));
    with_rank_one(alg, 1, &[h.clone(), h.s(), gp.clone(), gm.clone(), gp.s(), gm.s()])
}

/// Components of `α` and `Γ_{±α}` on `(α,α) = 2`: `ψ⁰, h` and `e^±, ψ^±`.
pub fn rank_one_even_algebra() -> Result<ComponentAlgebra, Error> {
    let mut alg = ComponentAlgebra::new(&[
        ("psi0", true),
        ("h", false),
        ("e+", false),
        ("e-", false),
        ("psi+", true),
        ("psi-", true),
    ])
    .with_others_zero();
    let (p0, h, ep, em, pp, pm) =
        (CompExpr::Gen(0), CompExpr::Gen(1), CompExpr::Gen(2), CompExpr::Gen(3), CompExpr::Gen(4), CompExpr::Gen(5));
    let one = CompExpr::Vac;
    let p0h = CompExpr::norm(p0.clone(), h.clone());
    let table: Vec<(&str, &str, ComponentBracket)> = vec![
        ("e+", "e-", lam(&[(0, h.clone()), (1, one.clone())])),
        ("e+", "psi-", lam(&[(0, p0h.clone().scale(int(-1))), (1, p0.clone().scale(int(-1)))])),
        ("e-", "psi+", lam(&[(0, p0h.scale(int(-1))), (1, p0.clone())])),
        (
            "psi+",
            "psi-",
            lam(&[
                (
                    0,
                    CompExpr::sum(vec![
                        h.clone().t().scale(int(-1)),
                        CompExpr::norm(h.clone(), h.clone()).scale(int(-1)),
                        CompExpr::norm(p0.clone(), p0.clone().t()),
                    ]),
                ),
                (1, h.clone().scale(int(-2))),
                (2, one.clone().scale(int(-1))),
            ]),
        ),
        ("h", "e+", lam(&[(0, ep.clone().scale(int(2)))])),
        ("h", "e-", lam(&[(0, em.clone().scale(int(-2)))])),
        ("h", "psi+", lam(&[(0, pp.scale(int(2)))])),
        ("h", "psi-", lam(&[(0, pm.scale(int(-2)))])),
        ("psi0", "psi+", lam(&[(0, ep.scale(int(2)))])),
        ("psi0", "psi-", lam(&[(0, em.scale(int(-2)))])),
        ("h", "h", lam(&[(1, one.clone().scale(int(2)))])),
        ("psi0", "psi0", lam(&[(0, one.scale(int(2)))])),
    ];
    for (a, b, br) in table {
        alg.declare(a, b, br)?;
    }
    let a = FieldExpr::h(1, 0);
    let (gp, gm) = (FieldExpr::gamma(&[1]), FieldExpr::gamma(&[-1]));
    with_rank_one(alg, 2, &[a.clone(), a.s(), gp.clone(), gm.clone(), gp.s(), gm.s()])
}

/// A field `s^pow · expr` with `s = 1/√2`.
#[derive(Clone, Debug)]
pub struct Graded {
    pub pow: u32,
    pub expr: CompExpr,
}

impl Graded {
    pub fn new(pow: u32, expr: CompExpr) -> Self {
        Graded { pow, expr }
    }
}

/// `λ`-polynomial with coefficients in `ℚ(√2)`, stored as `(power of λ, field)` terms.
pub type GradedBracket = Vec<(u32, Graded)>;

/// `J⁰, J^±, Φ, G̃⁰, G̃^±, L̃` in the rank-one algebra with `(α,α) = 2`.
pub struct N3Fields {
    pub j0: Graded,
    pub jp: Graded,
    pub jm: Graded,
    pub phi: Graded,
    pub g0: Graded,
    pub gp: Graded,
    pub gm: Graded,
    pub l: Graded,
}

pub fn build_n3_fields() -> N3Fields {
    let (p0, h, ep, em, pp, pm) =
        (CompExpr::Gen(0), CompExpr::Gen(1), CompExpr::Gen(2), CompExpr::Gen(3), CompExpr::Gen(4), CompExpr::Gen(5));
    N3Fields {
        j0: Graded::new(0, h.clone()),
        jp: Graded::new(0, ep),
        jm: Graded::new(0, em),
        phi: Graded::new(3, p0.clone()),
        g0: Graded::new(3, CompExpr::norm(p0.clone(), h.clone()).scale(int(-1))),
        gp: Graded::new(3, pp),
        gm: Graded::new(1, pm.scale(int(-1))),
        l: Graded::new(
            0,
            CompExpr::sum(vec![
                CompExpr::norm(h.clone(), h).scale(ratio(1, 4)),
                CompExpr::norm(p0.clone(), p0.t()).scale(ratio(-1, 4)),
            ]),
        ),
    }
}

/// `s^k` as a rational when `k` is even.
fn s_power(k: i64) -> Option<Scalar> {
    if k % 2 != 0 {
        return None;
    }
    let half = k / 2;
    Some(if half >= 0 { ratio(1, 1 << half) } else { int(1 << (-half)) })
}

/// Compare `[x_λ y]` with `rhs`, clearing the common power of `s`.
pub fn graded_check(alg: &ComponentAlgebra, x: &Graded, y: &Graded, rhs: &GradedBracket) -> Result<(bool, String, String), Error> {
    let lhs = alg.ordinary_bracket(&x.expr, &y.expr)?;
    let base = i64::from(x.pow + y.pow);
    let mut want = ComponentBracket::new();
    for (j, g) in rhs {
        let c = s_power(i64::from(g.pow) - base)
            .ok_or_else(|| Error::Invalid(String::from("mixed √2 grading in a relation")))?;
        let e = g.expr.clone().scale(c);
        let merged = match want.remove(j) {
            None => e,
            Some(prev) => CompExpr::sum(vec![prev, e]),
        };
        want.insert(*j, merged);
    }
    Ok((alg.bracket_equal(&lhs, &want)?, alg.render_bracket(&lhs), alg.render_bracket(&want)))
}

/// The `N=3` relations of central charge `3/2` on the fields of [`build_n3_fields`].
pub fn verify_n3(alg: &ComponentAlgebra, f: &N3Fields) -> Result<Report, Error> {
    let g = |pow: u32, e: CompExpr| Graded::new(pow, e);
    let t = |x: &Graded| Graded::new(x.pow, x.expr.clone().t());
    let sc = |x: &Graded, c: Scalar| Graded::new(x.pow, x.expr.clone().scale(c));
    let vac = CompExpr::Vac;
    // (T + 2λ)X / 4 and its multiples
    let t2l = |x: &Graded, c: Scalar| -> GradedBracket { vec![(0, sc(&t(x), c.clone())), (1, sc(x, c * int(2)))] };
    let mut rel: Vec<(&str, &Graded, &Graded, GradedBracket)> = vec![
        ("[J0 J+]", &f.j0, &f.jp, vec![(0, sc(&f.jp, int(2)))]),
        ("[J0 J-]", &f.j0, &f.jm, vec![(0, sc(&f.jm, int(-2)))]),
        ("[J0 J0]", &f.j0, &f.j0, vec![(1, g(0, vac.clone().scale(int(2))))]),
        ("[J+ J-]", &f.jp, &f.jm, vec![(0, f.j0.clone()), (1, g(0, vac.clone()))]),
        ("[J+ G~-]", &f.jp, &f.gm, vec![(0, sc(&f.g0, int(-2))), (1, sc(&f.phi, int(2)))]),
        ("[J- G~+]", &f.jm, &f.gp, vec![(0, f.g0.clone()), (1, f.phi.clone())]),
        ("[G~+ G~+]", &f.gp, &f.gp, vec![]),
        ("[G~- G~-]", &f.gm, &f.gm, vec![]),
        ("[G~+ G~0]", &f.gp, &f.g0, t2l(&f.jp, ratio(1, 4))),
        ("[G~+ Phi]", &f.gp, &f.phi, vec![(0, sc(&f.jp, ratio(1, 4)))]),
        ("[G~- Phi]", &f.gm, &f.phi, vec![(0, sc(&f.jm, ratio(1, 2)))]),
        ("[J0 G~0]", &f.j0, &f.g0, vec![(1, sc(&f.phi, int(-2)))]),
        ("[Phi G~0]", &f.phi, &f.g0, vec![(0, sc(&f.j0, ratio(-1, 4)))]),
        ("[G~- G~0]", &f.gm, &f.g0, t2l(&f.jm, ratio(-1, 2))),
    ];
    let mut gpgm = vec![(0, f.l.clone())];
    gpgm.extend(t2l(&f.j0, ratio(1, 4)));
    gpgm.push((2, g(0, vac.clone().scale(ratio(1, 4)))));
    rel.push(("[G~+ G~-]", &f.gp, &f.gm, gpgm));
    rel.push(("[G~0 G~0]", &f.g0, &f.g0, vec![(0, f.l.clone()), (2, g(0, vac.clone().scale(ratio(1, 4))))]));
    let mut ll = t2l(&f.l, int(1));
    ll.push((3, g(0, vac.scale(ratio(3, 24)))));
    rel.push(("[L~ L~] with c = 3/2", &f.l, &f.l, ll));
    let mut report = Report::default();
    for (name, x, y, rhs) in rel {
        let (ok, lhs, want) = graded_check(alg, x, y, &rhs)?;
        report.push(String::from(name), ok, lhs, want);
    }
    Ok(report)
}

/// `α = :ψ⁺ψ⁻:`, `φ^± = ±:ψ⁰ψ^±:` satisfy the super affine `sl₂` table, and
/// `G = ::ψ⁺ψ⁻:ψ⁰:`, `2L = :(Tψ⁰)ψ⁰: + :αα:` form a Neveu-Schwarz pair of central charge `3/2`.
pub fn verify_three_fermions(alg: &ComponentAlgebra) -> Result<Report, Error> {
    let (p0, pp, pm) = (CompExpr::Gen(0), CompExpr::Gen(1), CompExpr::Gen(2));
    let one = CompExpr::Vac;
    let alpha = CompExpr::norm(pp.clone(), pm.clone());
    let phip = CompExpr::norm(p0.clone(), pp.clone());
    let phim = CompExpr::norm(p0.clone(), pm.clone()).scale(int(-1));
    let g = CompExpr::norm(alpha.clone(), p0.clone());
    let two_l = CompExpr::sum(vec![CompExpr::norm(p0.clone().t(), p0.clone()), CompExpr::norm(alpha.clone(), alpha.clone())]);
    let l = two_l.clone().scale(ratio(1, 2));
    let neg = |e: &CompExpr| e.clone().scale(int(-1));
    let rels: Vec<(&str, CompExpr, CompExpr, ComponentBracket)> = vec![
        ("[alpha alpha]", alpha.clone(), alpha.clone(), lam(&[(1, one.clone())])),
        ("[alpha psi+]", alpha.clone(), pp.clone(), lam(&[(0, pp.clone())])),
        ("[alpha psi-]", alpha.clone(), pm.clone(), lam(&[(0, neg(&pm))])),
        ("[psi0 phi+]", p0.clone(), phip.clone(), lam(&[(0, pp.clone())])),
        ("[psi0 phi-]", p0.clone(), phim.clone(), lam(&[(0, neg(&pm))])),
        ("[alpha phi+]", alpha.clone(), phip.clone(), lam(&[(0, phip.clone())])),
        ("[alpha phi-]", alpha.clone(), phim.clone(), lam(&[(0, neg(&phim))])),
        ("[psi+ phi-]", pp.clone(), phim.clone(), lam(&[(0, p0.clone())])),
        ("[psi- phi+]", pm.clone(), phip.clone(), lam(&[(0, neg(&p0))])),
        ("[phi+ phi-]", phip.clone(), phim.clone(), lam(&[(0, alpha.clone()), (1, one.clone())])),
        ("[psi0 alpha]", p0.clone(), alpha.clone(), lam(&[])),
        ("[psi+ 2L]", pp.clone(), two_l.clone(), lam(&[(0, neg(&pp.clone().t())), (1, pp.clone())])),
        ("[L L]", l.clone(), l.clone(), lam(&[(0, l.clone().t()), (1, l.clone().scale(int(2))), (3, one.clone().scale(ratio(1, 8)))])),
        ("[L G]", l.clone(), g.clone(), lam(&[(0, g.clone().t()), (1, g.clone().scale(ratio(3, 2)))])),
        ("[G G]", g.clone(), g.clone(), lam(&[(0, two_l), (2, one.scale(ratio(1, 2)))])),
        ("[L psi0]", l.clone(), p0.clone(), lam(&[(0, p0.clone().t()), (1, p0.scale(ratio(1, 2)))])),
    ];
    let mut report = Report::default();
    for (name, a, b, want) in rels {
        let got = alg.ordinary_bracket(&a, &b)?;
        report.push(String::from(name), alg.bracket_equal(&got, &want)?, alg.render_bracket(&got), alg.render_bracket(&want));
    }
    Ok(report)
}
