//! Superfield expressions, the `N_K=1` `Λ`-bracket calculus, ordinary component
//! brackets and the conformal structures built from them.
//!
//! Expressions are compared through their canonical form: the image of the
//! expression in the lattice vertex algebra, read back as a sum of right-nested
//! normally ordered words `:l₁ :l₂ ⋯ :lₖ Γ_γ:⋯::` of letters `T^k h_i` and
//! `T^k S h_i`.

mod calculus;
pub mod checks;
pub mod component;
mod jets;
pub mod n3;
pub mod oracle;
mod parse;
pub mod structures;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactnum::{factorial, LambdaMonomial, Scalar};
use crate::fock::{Monomial, State};
use crate::lattice::{Lattice, LatticeVector};
use crate::{Error, Rat};

pub use calculus::{Calculus, ComponentExpansion, LambdaSeries, StateBracket};
pub use parse::parse_expr;

/// Sign conventions of the calculus, gathered in one place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    /// `χ² = chi_squared · λ`.
    pub chi_squared: i8,
    /// Sign of the Berezin integrals `∫_0^Λ` and `∫_{−∇}^0`.
    pub berezin: i8,
    /// Sign acquired by `χ` of the outer bracket when the inner bracket of the Wick integral is taken.
    pub chi_through_bracket: i8,
    /// Overall sign of skew-symmetry.
    pub skew: i8,
}

impl Conventions {
    pub const STANDARD: Conventions = Conventions { chi_squared: -1, berezin: 1, chi_through_bracket: -1, skew: 1 };

    /// `{S, χ} = (1 − chi_squared)·λ`, from `(χ + S)² = λ + T`.
    pub fn anticommutator(&self) -> i64 {
        1 - self.chi_squared as i64
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions::STANDARD
    }
}

/// A superfield expression.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldExpr {
    Vacuum,
    /// The odd field `h(Z)` of a vector of `W`, in coordinates of the lattice basis.
    Cartan(Vec<Rat>),
    Gamma(LatticeVector),
    Td(Box<FieldExpr>),
    Sd(Box<FieldExpr>),
    Smul(Scalar, Box<FieldExpr>),
    Sum(Vec<FieldExpr>),
    Norm(Box<FieldExpr>, Box<FieldExpr>),
}

impl FieldExpr {
    pub fn zero() -> Self {
        FieldExpr::Sum(Vec::new())
    }

    /// The basis field `h_i` (0-based index).
    pub fn h(rank: usize, i: usize) -> Self {
        let mut v = alloc::vec![Rat::zero(); rank];
        v[i] = Rat::one();
        FieldExpr::Cartan(v)
    }

    pub fn cartan(v: &[i64]) -> Self {
        FieldExpr::Cartan(v.iter().map(|&x| Rat::from(x)).collect())
    }

    pub fn gamma(v: &[i64]) -> Self {
        FieldExpr::Gamma(v.to_vec())
    }

    pub fn t(self) -> Self {
        FieldExpr::Td(Box::new(self))
    }

    pub fn s(self) -> Self {
        FieldExpr::Sd(Box::new(self))
    }

    pub fn scale(self, c: Scalar) -> Self {
        FieldExpr::Smul(c, Box::new(self))
    }

    pub fn norm(a: FieldExpr, b: FieldExpr) -> Self {
        FieldExpr::Norm(Box::new(a), Box::new(b))
    }

    pub fn sum(v: Vec<FieldExpr>) -> Self {
        FieldExpr::Sum(v)
    }

    /// Parity (`true` = odd); a sum must be homogeneous.
    pub fn parity(&self, lat: &Lattice) -> Result<bool, Error> {
        Ok(match self {
            FieldExpr::Vacuum => false,
            FieldExpr::Cartan(_) => true,
            FieldExpr::Gamma(a) => lat.pairing_int(a, a)?.rem_euclid(2) == 1,
            FieldExpr::Td(x) | FieldExpr::Smul(_, x) => x.parity(lat)?,
            FieldExpr::Sd(x) => !x.parity(lat)?,
            FieldExpr::Norm(a, b) => a.parity(lat)? ^ b.parity(lat)?,
            FieldExpr::Sum(v) => {
                let mut p = None;
                for x in v {
                    let q = x.parity(lat)?;
                    if p.is_some_and(|p| p != q) {
                        return Err(Error::Invalid(String::from("sum of fields of mixed parity")));
                    }
                    p = Some(q);
                }
                p.unwrap_or(false)
            }
        })
    }
}

/// Parity of a homogeneous state of the vertex algebra (`None` for zero).
pub fn state_parity(lat: &Lattice, st: &State) -> Result<Option<bool>, Error> {
    let mut p = None;
    for (m, _) in st.iter() {
        let q = monomial_parity(lat, m);
        if p.is_some_and(|p| p != q) {
            return Err(Error::Invalid(String::from("state of mixed parity")));
        }
        p = Some(q);
    }
    Ok(p)
}

pub(crate) fn monomial_parity(lat: &Lattice, m: &Monomial) -> bool {
    let odd_charge = (lat.pair(&m.charge, &m.charge).to_integer()).rem_euclid(2) == 1;
    (m.fermion_count() % 2 == 1) ^ odd_charge
}

fn inv_factorial(k: u32) -> Scalar {
    Scalar::from_bigint(factorial(k)).inv().expect("non-zero factorial")
}

fn letter(rank: usize, i: usize, tk: u32, s: bool) -> FieldExpr {
    let mut e = FieldExpr::h(rank, i);
    if s {
        e = e.s();
    }
    for _ in 0..tk {
        e = e.t();
    }
    e
}

/// The canonical word of a monomial, with the factor `m = c · word`.
fn word_of(m: &Monomial) -> (FieldExpr, Scalar) {
    let rank = m.charge.len();
    let mut letters = Vec::new();
    let mut c = Scalar::one();
    for &(k, i) in &m.fermions {
        letters.push(letter(rank, i, k, false));
        c = c * inv_factorial(k);
    }
    for &(n, i) in &m.bosons {
        letters.push(letter(rank, i, n - 1, true));
        c = c * inv_factorial(n - 1);
    }
    if m.charge.iter().any(|q| !q.is_zero()) {
        debug_assert!(m.charge.iter().all(|q| q.is_integer()));
        letters.push(FieldExpr::Gamma(m.charge.iter().map(|q| q.to_integer()).collect()));
    }
    let mut it = letters.into_iter().rev();
    let Some(mut e) = it.next() else {
        return (FieldExpr::Vacuum, c);
    };
    for l in it {
        e = FieldExpr::norm(l, e);
    }
    (e, c)
}

/// Canonical expression of a state of `V_Q`.
pub fn from_state(st: &State) -> FieldExpr {
    let mut terms: Vec<FieldExpr> = st
        .iter()
        .map(|(m, c)| {
            let (w, k) = word_of(m);
            let c = c * &k;
            if c.is_one() {
                w
            } else {
                w.scale(c)
            }
        })
        .collect();
    if terms.len() == 1 {
        terms.pop().expect("one term")
    } else {
        FieldExpr::Sum(terms)
    }
}

fn fmt_coeff(c: &Scalar) -> String {
    if c.is_real() {
        format!("{c}")
    } else {
        format!("({c})")
    }
}

fn needs_parens(e: &FieldExpr) -> bool {
    matches!(e, FieldExpr::Sum(v) if v.len() != 1) || matches!(e, FieldExpr::Smul(..))
}

fn negated(e: &FieldExpr) -> Option<(Scalar, &FieldExpr)> {
    match e {
        FieldExpr::Smul(c, x) if c.is_real() && c.re.is_negative() => Some((-c, x)),
        _ => None,
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldExpr::Vacuum => f.write_str("vac"),
            FieldExpr::Cartan(v) => {
                let nz: Vec<(usize, &Rat)> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                match nz.as_slice() {
                    [] => f.write_str("0"),
                    [(i, c)] if c.is_one() => write!(f, "h[{}]", i + 1),
                    _ => {
                        f.write_str("(")?;
                        for (k, (i, c)) in nz.iter().enumerate() {
                            if k > 0 {
                                f.write_str(" + ")?;
                            }
                            write!(f, "{}*h[{}]", fmt_coeff(&Scalar::from_ratio64(**c)), i + 1)?;
                        }
                        f.write_str(")")
                    }
                }
            }
            FieldExpr::Gamma(a) => {
                f.write_str("Gamma[")?;
                for (k, x) in a.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            FieldExpr::Td(x) => write!(f, "T({x})"),
            FieldExpr::Sd(x) => write!(f, "S({x})"),
            FieldExpr::Smul(c, x) => {
                if needs_parens(x) {
                    write!(f, "{}*({x})", fmt_coeff(c))
                } else {
                    write!(f, "{}*{x}", fmt_coeff(c))
                }
            }
            FieldExpr::Sum(v) => {
                if v.is_empty() {
                    return f.write_str("0");
                }
                for (k, x) in v.iter().enumerate() {
                    match (k, negated(x)) {
                        (0, _) => write!(f, "{x}")?,
                        (_, Some((c, y))) if c.is_one() && !needs_parens(y) => write!(f, " - {y}")?,
                        (_, Some((c, y))) => write!(f, " - {}", FieldExpr::Smul(c, Box::new(y.clone())))?,
                        _ => write!(f, " + {x}")?,
                    }
                }
                Ok(())
            }
            FieldExpr::Norm(a, b) => {
                let wrap = |e: &FieldExpr| if needs_parens(e) { format!("({e})") } else { format!("{e}") };
                write!(f, ":{} {}:", wrap(a), wrap(b))
            }
        }
    }
}

/// A `Λ`-bracket `Σ λ^j χ^J X_{jJ}` with canonical coefficients; `χ` stands to the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BracketResult {
    pub terms: BTreeMap<LambdaMonomial, FieldExpr>,
}

impl BracketResult {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, j: u32, chi: u8) -> Option<&FieldExpr> {
        self.terms.get(&LambdaMonomial::new(j, chi))
    }
}

impl fmt::Display for BracketResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, e) in &self.terms {
            writeln!(f, "{m} : {e}")?;
        }
        Ok(())
    }
}

/// A report of named identity checks, each with both sides in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.checks.push(Check { name: name.into(), passed, lhs: format!("{lhs}"), rhs: format!("{rhs}") });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// The first failing check.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}\n  lhs: {}\n  rhs: {}", c.name, c.lhs, c.rhs)?;
            }
        }
        Ok(())
    }
}
