//! Neveu-Schwarz, `N=2` and little `N=4` structures on lattice SUSY vertex algebras.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::calculus::StateBracket;
use super::{from_state, Calculus, FieldExpr, Report};
use crate::exactnum::{LambdaMonomial, Scalar};
use crate::fock::space::{s_state, t_state};
use crate::fock::{enumerate_basis, l0_and_susy_operators, FockSector, State};
use crate::lattice::{to_rat, Lattice, LatticeVector};
use crate::{Error, Rat};

/// A square matrix of scalars acting on coordinates in the lattice basis.
pub type Matrix = Vec<Vec<Scalar>>;

fn acc(out: &mut StateBracket, m: LambdaMonomial, st: &State, c: &Scalar) {
    if st.is_zero() || c.is_zero() {
        return;
    }
    let e = out.entry(m).or_default();
    e.add_state(st, c);
    if e.is_zero() {
        out.remove(&m);
    }
}

fn render(br: &StateBracket) -> String {
    if br.is_empty() {
        return String::from("0");
    }
    br.iter().map(|(m, st)| format!("{m} : {}", from_state(st))).collect::<Vec<_>>().join(" ; ")
}

fn compare(report: &mut Report, name: String, lhs: &StateBracket, rhs: &StateBracket) {
    report.push(name, lhs == rhs, render(lhs), render(rhs));
}

/// `(2T + 2Δλ + χS) a` for a field of weight `Δ`.
pub fn primary_target(a: &State, two_delta: &Scalar) -> StateBracket {
    let mut out = StateBracket::new();
    acc(&mut out, LambdaMonomial::ONE, &t_state(a), &Scalar::int(2));
    acc(&mut out, LambdaMonomial::LAMBDA, a, two_delta);
    acc(&mut out, LambdaMonomial::CHI, &s_state(a), &Scalar::one());
    out
}

/// `G = Σ_i :(Sα_i) α^i:` with `α^i` the dual basis.
pub fn build_g(lat: &Lattice) -> FieldExpr {
    let r = lat.rank();
    let inv = lat.gram_inverse();
    let terms: Vec<FieldExpr> = (0..r)
        .map(|i| {
            let dual: Vec<Rat> = (0..r).map(|k| inv[k][i]).collect();
            FieldExpr::norm(FieldExpr::h(r, i).s(), FieldExpr::Cartan(dual))
        })
        .collect();
    FieldExpr::Sum(terms)
}

/// Neveu-Schwarz relation of central charge `c` and primality of `h_i` and `Γ_α`.
pub fn verify_conformal(calc: &Calculus<'_>, g: &FieldExpr, c: &Scalar, gammas: &[LatticeVector]) -> Result<Report, Error> {
    let lat = calc.lattice();
    let r = lat.rank();
    let mut report = Report::default();
    let gs = calc.state(g)?;
    let lhs = calc.susy_bracket_states(g, g)?;
    let mut rhs = primary_target(&gs, &Scalar::int(3));
    acc(&mut rhs, LambdaMonomial::new(2, 1), &State::vacuum(r), &(c * &Scalar::ratio(1, 3)));
    compare(&mut report, format!("[G_Λ G] with c = {c}"), &lhs, &rhs);
    for i in 0..r {
        let h = FieldExpr::h(r, i);
        let lhs = calc.susy_bracket_states(g, &h)?;
        let rhs = primary_target(&calc.state(&h)?, &Scalar::one());
        compare(&mut report, format!("[G_Λ h[{}]] weight 1/2", i + 1), &lhs, &rhs);
    }
    for a in gammas {
        let ga = FieldExpr::Gamma(a.clone());
        let norm = lat.pairing_int(a, a)?;
        let lhs = calc.susy_bracket_states(g, &ga)?;
        let rhs = primary_target(&calc.state(&ga)?, &Scalar::int(norm));
        compare(&mut report, format!("[G_Λ {ga}] weight {norm}/2"), &lhs, &rhs);
    }
    Ok(report)
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Scalar::zero();
                    for k in 0..n {
                        s += &(&a[i][k] * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn gram_scalar(lat: &Lattice) -> Matrix {
    lat.gram().iter().map(|row| row.iter().map(|&x| Scalar::int(x)).collect()).collect()
}

fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

fn neg(a: &Matrix) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| -x).collect()).collect()
}

fn scale(a: &Matrix, c: &Scalar) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| x * c).collect()).collect()
}

/// `(Aα, α') = −(α, Aα')` and `A² = Id`.
pub fn check_admissible(lat: &Lattice, a: &Matrix) -> Result<(), Error> {
    let n = lat.rank();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::RankMismatch { expected: n, got: a.len() });
    }
    let g = gram_scalar(lat);
    if mat_mul(&transpose(a), &g) != neg(&mat_mul(&g, a)) {
        return Err(Error::Inadmissible(String::from("(Aα, α') = −(α, Aα') fails")));
    }
    if mat_mul(a, a) != identity(n) {
        return Err(Error::Inadmissible(String::from("A² = Id fails")));
    }
    Ok(())
}

/// `J = ½ Σ_{i,j} (α_i, Aα^j) :α_i α^j:`.
pub fn build_j(lat: &Lattice, a: &Matrix) -> Result<FieldExpr, Error> {
    check_admissible(lat, a)?;
    let r = lat.rank();
    let inv = lat.gram_inverse();
    let g = gram_scalar(lat);
    let mut terms = Vec::new();
    for j in 0..r {
        let dual: Vec<Rat> = (0..r).map(|k| inv[k][j]).collect();
        let a_dual: Vec<Scalar> =
            (0..r).map(|k| (0..r).fold(Scalar::zero(), |s, m| s + &a[k][m] * &Scalar::from_ratio64(dual[m]))).collect();
        for i in 0..r {
            let c = (0..r).fold(Scalar::zero(), |s, k| s + &g[i][k] * &a_dual[k]);
            if !c.is_zero() {
                let term = FieldExpr::norm(FieldExpr::h(r, i), FieldExpr::Cartan(dual.clone()));
                terms.push(term.scale(&c * &Scalar::ratio(1, 2)));
            }
        }
    }
    Ok(FieldExpr::Sum(terms))
}

/// `J` primary of weight 1 and `[J_Λ J] = G + (c/3)λχ`.
pub fn verify_n2(calc: &Calculus<'_>, g: &FieldExpr, j: &FieldExpr, c: &Scalar) -> Result<Report, Error> {
    let mut report = Report::default();
    let js = calc.state(j)?;
    compare(&mut report, String::from("[G_Λ J] weight 1"), &calc.susy_bracket_states(g, j)?, &primary_target(&js, &Scalar::int(2)));
    let mut rhs = StateBracket::new();
    acc(&mut rhs, LambdaMonomial::ONE, &calc.state(g)?, &Scalar::one());
    acc(&mut rhs, LambdaMonomial::new(1, 1), &State::vacuum(calc.lattice().rank()), &(c * &Scalar::ratio(1, 3)));
    compare(&mut report, format!("[J_Λ J] = G + {c}/3 λχ"), &calc.susy_bracket_states(j, j)?, &rhs);
    Ok(report)
}

/// `S¹ = G_(0|1)` and `S² = √−1 J_(0|0)` satisfy `[S^i, S^j] = 2δ_ij T` on a truncated vacuum sector.
///
/// Indefinite lattices are restricted to the charge-zero subspace.
pub fn verify_n2_fock(calc: &Calculus<'_>, j: &FieldExpr, e_max: Rat) -> Result<bool, Error> {
    let lat = calc.lattice();
    let zero = alloc::vec![0; lat.rank()];
    let mut sec = FockSector::ns(lat.clone(), calc.cocycle().clone(), to_rat(&zero), e_max);
    if !lat.is_positive_definite() {
        sec = sec.with_window(alloc::vec![zero]);
    }
    let basis = enumerate_basis(&sec)?;
    let js = calc.state(j)?;
    let (_, s1, s2) = l0_and_susy_operators(&sec, &basis, Some(&js))?;
    let (s1, s2) = (s1.expect("untwisted sector"), s2.expect("J supplied"));
    Ok(crate::fock::sector::susy_pair_check(&sec, &basis, &[&s1, &s2]))
}

/// Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> [Matrix; 3] {
    let z = Scalar::zero;
    let o = Scalar::one;
    let i = Scalar::i;
    [
        alloc::vec![alloc::vec![z(), o()], alloc::vec![o(), z()]],
        alloc::vec![alloc::vec![z(), -i()], alloc::vec![i(), z()]],
        alloc::vec![alloc::vec![o(), z()], alloc::vec![z(), -o()]],
    ]
}

/// Kronecker product.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    (0..n * m).map(|r| (0..n * m).map(|c| &a[r / m][c / m] * &b[r % m][c % m]).collect()).collect()
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Each `A^i` admissible and `A^i A^j = √−1 ε_ijk A^k` for `i ≠ j`.
pub fn check_quaternionic(lat: &Lattice, a: &[Matrix; 3]) -> Result<(), Error> {
    for m in a {
        check_admissible(lat, m)?;
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let want = scale(&a[k], &(Scalar::i() * Scalar::int(levi_civita(i, j, k))));
            if mat_mul(&a[i], &a[j]) != want {
                return Err(Error::Inadmissible(format!("A^{}A^{} = √−1 ε A^{} fails", i + 1, j + 1, k + 1)));
            }
        }
    }
    Ok(())
}

/// Each `(G, J^i)` passes [`verify_n2`] and `[J^i_Λ J^j] = √−1 ε_ijk (S + 2χ) J^k` for `i ≠ j`.
pub fn verify_little_n4(calc: &Calculus<'_>, a: &[Matrix; 3]) -> Result<Report, Error> {
    let lat = calc.lattice();
    check_quaternionic(lat, a)?;
    let g = build_g(lat);
    let c = Scalar::ratio(3 * lat.rank() as i64, 2);
    let js: Vec<FieldExpr> = a.iter().map(|m| build_j(lat, m)).collect::<Result<_, _>>()?;
    let mut report = Report::default();
    for (i, j) in js.iter().enumerate() {
        let sub = verify_n2(calc, &g, j, &c)?;
        for mut ch in sub.checks {
            ch.name = format!("J^{}: {}", i + 1, ch.name);
            report.checks.push(ch);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let jk = calc.state(&js[k])?;
            let coeff = Scalar::i() * Scalar::int(levi_civita(i, j, k));
            let mut rhs = StateBracket::new();
            acc(&mut rhs, LambdaMonomial::ONE, &s_state(&jk), &coeff);
            acc(&mut rhs, LambdaMonomial::CHI, &jk, &(&coeff * &Scalar::int(2)));
            let lhs = calc.susy_bracket_states(&js[i], &js[j])?;
            compare(&mut report, format!("[J^{}_Λ J^{}]", i + 1, j + 1), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// The triple `σ₂⊗I, σ₁⊗σ₂, −σ₃⊗σ₂` on `diag(2,2,2,2)`.
pub fn standard_quaternionic_triple() -> [Matrix; 3] {
    let [s1, s2, s3] = pauli();
    let id = identity(2);
    [kron(&s2, &id), kron(&s1, &s2), neg(&kron(&s3, &s2))]
}

/// The component structure `V_Q ⊗ F(W)`: `[h_λ h'] = (h,h')λ`, `[h̄_λ h̄'] = (h,h')`,
/// `[h̄_λ Γ_α] = 0`, `[h_λ Γ_α] = (h,α)Γ_α`, and `SΓ_α = :h̄_α Γ_α:`.
pub fn verify_iso_vq(calc: &Calculus<'_>, gammas: &[LatticeVector]) -> Result<Report, Error> {
    let lat = calc.lattice();
    let r = lat.rank();
    let mut report = Report::default();
    let vac = FieldExpr::Vacuum;
    let series = |pairs: &[(u32, FieldExpr)]| -> BTreeMap<u32, FieldExpr> { pairs.iter().cloned().collect() };
    for i in 0..r {
        for j in 0..r {
            let (hi, hj) = (FieldExpr::h(r, i), FieldExpr::h(r, j));
            let br = calc.susy_bracket(&hi, &hj)?;
            let ex = calc.expand_components(&br, &hi, &hj)?;
            let g = Scalar::int(lat.g(i, j));
            let want_bos = series(&[(1, vac.clone().scale(g.clone()))]);
            let want_fer = series(&[(0, vac.clone().scale(g))]);
            report.push(format!("[h_{}λ h_{}]", i + 1, j + 1), calc.series_equal(&ex.sa_sb, &want_bos)?, fmt_series(&ex.sa_sb), fmt_series(&want_bos));
            report.push(format!("[h̄_{}λ h̄_{}]", i + 1, j + 1), calc.series_equal(&ex.a_b, &want_fer)?, fmt_series(&ex.a_b), fmt_series(&want_fer));
        }
        for a in gammas {
            let hi = FieldExpr::h(r, i);
            let ga = FieldExpr::Gamma(a.clone());
            let br = calc.susy_bracket(&hi, &ga)?;
            let ex = calc.expand_components(&br, &hi, &ga)?;
            report.push(format!("[h̄_{}λ {ga}]", i + 1), ex.a_b.is_empty(), fmt_series(&ex.a_b), "0");
            let p = lat.pairing(&lat_unit(r, i), &to_rat(a))?;
            let want = series(&[(0, ga.clone().scale(Scalar::from_ratio64(p)))]);
            report.push(format!("[h_{}λ {ga}]", i + 1), calc.series_equal(&ex.sa_b, &want)?, fmt_series(&ex.sa_b), fmt_series(&want));
        }
    }
    for a in gammas {
        let ga = FieldExpr::Gamma(a.clone());
        let lhs = ga.clone().s();
        let rhs = FieldExpr::norm(FieldExpr::cartan(a), ga.clone());
        report.push(format!("S{ga} = :h̄ {ga}:"), calc.equal(&lhs, &rhs)?, calc.canonicalize(&lhs)?, calc.canonicalize(&rhs)?);
    }
    Ok(report)
}

fn lat_unit(r: usize, i: usize) -> Vec<Rat> {
    (0..r).map(|k| if k == i { Rat::from(1) } else { Rat::zero() }).collect()
}

/// Render a `λ`-polynomial.
pub fn fmt_series(s: &BTreeMap<u32, FieldExpr>) -> String {
    if s.is_empty() {
        return String::from("0");
    }
    s.iter().map(|(j, e)| format!("lambda^{j} : {e}")).collect::<Vec<_>>().join(" ; ")
}
