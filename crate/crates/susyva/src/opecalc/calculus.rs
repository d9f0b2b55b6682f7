//! The `Λ`-bracket calculus on superfield expressions.
//!
//! Brackets are evaluated by recursion on the expression tree: sesquilinearity for
//! `T` and `S`, the non-commutative Wick formula for a normally ordered right
//! argument, skew-symmetry for a normally ordered left argument, and the base
//! brackets `[h_Λ h'] = (h,h')χ`, `[h_Λ Γ_γ] = (h,γ)Γ_γ` and the jet formula for
//! `[Γ_α Λ Γ_β]`. Coefficients are carried as states of `V_Q`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::jets::{jet_table, JetLetter};
use super::{from_state, state_parity, BracketResult, Conventions, FieldExpr};
use crate::exactnum::{factorial, LambdaMonomial, Scalar};
use crate::fock::sector::cartan_state;
use crate::fock::space::{s_state, t_state};
use crate::fock::{Monomial, State, VertexEngine};
use crate::lattice::{to_rat, Cocycle, Lattice};
use crate::{Error, Rat};

/// A `Λ`-bracket with state coefficients.
pub type StateBracket = BTreeMap<LambdaMonomial, State>;

/// A polynomial in `λ` with expression coefficients.
pub type LambdaSeries = BTreeMap<u32, FieldExpr>;

/// Largest `−(α,β)` for which `[Γ_α Λ Γ_β]` is assembled from jets.
pub const MAX_JET_PAIRING: i64 = 4;

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

fn add_all(out: &mut StateBracket, x: &StateBracket, c: &Scalar) {
    for (m, st) in x {
        acc(out, *m, st, c);
    }
}

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

fn inv_int(n: i64) -> Scalar {
    Scalar::ratio(1, n)
}

fn inv_factorial(k: u32) -> Scalar {
    Scalar::from_bigint(factorial(k)).inv().expect("non-zero factorial")
}

fn lambda_times(x: &StateBracket) -> StateBracket {
    x.iter().map(|(m, st)| (LambdaMonomial::new(m.j + 1, m.chi), st.clone())).collect()
}

fn t_left(x: &StateBracket) -> StateBracket {
    let mut out = StateBracket::new();
    for (m, st) in x {
        acc(&mut out, *m, &t_state(st), &Scalar::one());
    }
    out
}

/// The four ordinary brackets among `(a, Sa) × (b, Sb)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentExpansion {
    pub a_b: LambdaSeries,
    pub sa_b: LambdaSeries,
    pub a_sb: LambdaSeries,
    pub sa_sb: LambdaSeries,
}

/// Symbolic calculus for the lattice SUSY vertex algebra of a lattice with a cocycle.
#[derive(Clone, Debug)]
pub struct Calculus<'a> {
    lat: &'a Lattice,
    cocycle: &'a Cocycle,
    conv: Conventions,
    eng: VertexEngine<'a>,
}

impl<'a> Calculus<'a> {
    pub fn new(lat: &'a Lattice, cocycle: &'a Cocycle) -> Self {
        Self::with_conventions(lat, cocycle, Conventions::STANDARD)
    }

    pub fn with_conventions(lat: &'a Lattice, cocycle: &'a Cocycle, conv: Conventions) -> Self {
        Calculus { lat, cocycle, conv, eng: VertexEngine::new(lat, cocycle) }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lat
    }

    pub fn cocycle(&self) -> &'a Cocycle {
        self.cocycle
    }

    pub fn conventions(&self) -> Conventions {
        self.conv
    }

    pub fn engine(&self) -> &VertexEngine<'a> {
        &self.eng
    }

    fn check_rank(&self, n: usize) -> Result<(), Error> {
        if n == self.lat.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.lat.rank(), got: n })
        }
    }

    pub fn parity(&self, e: &FieldExpr) -> Result<bool, Error> {
        e.parity(self.lat)
    }

    /// The state of `V_Q` corresponding to an expression.
    pub fn state(&self, e: &FieldExpr) -> Result<State, Error> {
        let r = self.lat.rank();
        Ok(match e {
            FieldExpr::Vacuum => State::vacuum(r),
            FieldExpr::Cartan(v) => {
                self.check_rank(v.len())?;
                cartan_state(r, v)
            }
            FieldExpr::Gamma(a) => {
                self.check_rank(a.len())?;
                State::basis(Monomial::exp(to_rat(a)))
            }
            FieldExpr::Td(x) => t_state(&self.state(x)?),
            FieldExpr::Sd(x) => s_state(&self.state(x)?),
            FieldExpr::Smul(c, x) => self.state(x)?.scale(c),
            FieldExpr::Sum(v) => {
                let mut s = State::zero();
                for x in v {
                    s.add_state(&self.state(x)?, &Scalar::one());
                }
                s
            }
            FieldExpr::Norm(a, b) => self.eng.normal_product(&self.state(a)?, &self.state(b)?),
        })
    }

    /// Canonical form; equal canonical forms mean equal fields.
    pub fn canonicalize(&self, e: &FieldExpr) -> Result<FieldExpr, Error> {
        Ok(from_state(&self.state(e)?))
    }

    pub fn equal(&self, a: &FieldExpr, b: &FieldExpr) -> Result<bool, Error> {
        Ok(self.state(a)? == self.state(b)?)
    }

    pub fn result(&self, br: &StateBracket) -> BracketResult {
        BracketResult { terms: br.iter().map(|(m, st)| (*m, from_state(st))).collect() }
    }

    /// States of the coefficients of a bracket result.
    pub fn bracket_states(&self, br: &BracketResult) -> Result<StateBracket, Error> {
        let mut out = StateBracket::new();
        for (m, e) in &br.terms {
            acc(&mut out, *m, &self.state(e)?, &Scalar::one());
        }
        Ok(out)
    }

    /// Build a bracket from `(j, J, expression)` triples.
    pub fn bracket_from(&self, terms: &[(u32, u8, FieldExpr)]) -> Result<BracketResult, Error> {
        let mut out = StateBracket::new();
        for (j, chi, e) in terms {
            acc(&mut out, LambdaMonomial::new(*j, *chi), &self.state(e)?, &Scalar::one());
        }
        Ok(self.result(&out))
    }

    /// `[a_Λ b]` by the symbolic rules.
    pub fn susy_bracket(&self, a: &FieldExpr, b: &FieldExpr) -> Result<BracketResult, Error> {
        Ok(self.result(&self.br(a, b)?))
    }

    /// `[a_Λ b]` with state coefficients, by the symbolic rules.
    pub fn susy_bracket_states(&self, a: &FieldExpr, b: &FieldExpr) -> Result<StateBracket, Error> {
        self.br(a, b)
    }

    /// `[a_Λ b]` read off from the products `a_(j) b` of the vertex operator engine.
    pub fn oracle_bracket(&self, a: &FieldExpr, b: &FieldExpr) -> Result<BracketResult, Error> {
        Ok(self.result(&self.eng.lambda_bracket(&self.state(a)?, &self.state(b)?)))
    }

    /// `χ·X`.
    fn chi_left(&self, x: &StateBracket) -> StateBracket {
        let mut out = StateBracket::new();
        let sq = Scalar::int(self.conv.chi_squared as i64);
        for (m, st) in x {
            if m.chi == 0 {
                acc(&mut out, LambdaMonomial::new(m.j, 1), st, &Scalar::one());
            } else {
                acc(&mut out, LambdaMonomial::new(m.j + 1, 0), st, &sq);
            }
        }
        out
    }

    /// `S·X`, moving `S` through `χ`.
    fn s_left(&self, x: &StateBracket) -> StateBracket {
        let mut out = StateBracket::new();
        let anti = Scalar::int(self.conv.anticommutator());
        for (m, st) in x {
            let sst = s_state(st);
            if m.chi == 0 {
                acc(&mut out, *m, &sst, &Scalar::one());
            } else {
                acc(&mut out, *m, &sst, &Scalar::int(-1));
                acc(&mut out, LambdaMonomial::new(m.j + 1, 0), st, &anti);
            }
        }
        out
    }

    fn br(&self, a: &FieldExpr, b: &FieldExpr) -> Result<StateBracket, Error> {
        use FieldExpr::*;
        let mut out = StateBracket::new();
        match (a, b) {
            (Vacuum, _) | (_, Vacuum) => {}
            (Sum(v), _) => {
                for x in v {
                    add_all(&mut out, &self.br(x, b)?, &Scalar::one());
                }
            }
            (Smul(c, x), _) => add_all(&mut out, &self.br(x, b)?, c),
            (_, Sum(v)) => {
                for y in v {
                    add_all(&mut out, &self.br(a, y)?, &Scalar::one());
                }
            }
            (_, Smul(c, y)) => add_all(&mut out, &self.br(a, y)?, c),
            (Td(x), _) => add_all(&mut out, &lambda_times(&self.br(x, b)?), &Scalar::int(-1)),
            (Sd(x), _) => out = self.chi_left(&self.br(x, b)?),
            (_, Td(y)) => {
                let z = self.br(a, y)?;
                add_all(&mut out, &lambda_times(&z), &Scalar::one());
                add_all(&mut out, &t_left(&z), &Scalar::one());
            }
            (_, Sd(y)) => {
                let z = self.br(a, y)?;
                let sg = -sign(self.parity(a)?);
                add_all(&mut out, &self.s_left(&z), &sg);
                add_all(&mut out, &self.chi_left(&z), &sg);
            }
            (_, Norm(y, z)) => out = self.wick(a, y, z)?,
            (Norm(..), _) | (Gamma(_), Cartan(_)) => {
                let x = self.br(b, a)?;
                out = self.skew_transform(&x, self.parity(b)?, self.parity(a)?);
            }
            (Cartan(u), Cartan(v)) => {
                self.check_rank(u.len())?;
                self.check_rank(v.len())?;
                let c = Scalar::from_ratio64(self.lat.pair(u, v));
                acc(&mut out, LambdaMonomial::CHI, &State::vacuum(self.lat.rank()), &c);
            }
            (Cartan(u), Gamma(g)) => {
                self.check_rank(u.len())?;
                let c = Scalar::from_ratio64(self.lat.pair(u, &to_rat(g)));
                acc(&mut out, LambdaMonomial::ONE, &self.state(b)?, &c);
            }
            (Gamma(x), Gamma(y)) => out = self.gamma_states(x, y)?,
        }
        Ok(out)
    }

    /// `[a_Λ :yz:] = :[a_Λ y]z: + (−1)^{(p(a)+1)p(y)} :y[a_Λ z]: + ∫_0^Λ [[a_Λ y]_Γ z] dΓ`.
    fn wick(&self, a: &FieldExpr, y: &FieldExpr, z: &FieldExpr) -> Result<StateBracket, Error> {
        let pa = self.parity(a)?;
        let py = self.parity(y)?;
        let ay = self.br(a, y)?;
        let az = self.br(a, z)?;
        let ys = self.state(y)?;
        let zs = self.state(z)?;
        let mut out = StateBracket::new();
        for (m, x) in &ay {
            acc(&mut out, *m, &self.eng.normal_product(x, &zs), &Scalar::one());
        }
        for (m, x) in &az {
            let odd = ((pa as u8 + 1) * py as u8 + m.chi * py as u8) % 2 == 1;
            acc(&mut out, *m, &self.eng.normal_product(&ys, x), &sign(odd));
        }
        let berezin = Scalar::int(self.conv.berezin as i64);
        let through = Scalar::int(-(self.conv.chi_through_bracket as i64));
        for (m, x) in &ay {
            let inner = self.br(&from_state(x), z)?;
            let c0 = if m.chi == 1 { &berezin * &through } else { berezin.clone() };
            for (k, cst) in inner.iter().filter(|(k, _)| k.chi == 1) {
                let c = &c0 * &inv_int(k.j as i64 + 1);
                acc(&mut out, LambdaMonomial::new(m.j + k.j + 1, m.chi), cst, &c);
            }
        }
        Ok(out)
    }

    /// `[b_Λ a] = ±(−1)^{p(a)p(b)} [a_{−Λ−∇} b]` from `[a_Λ b]`.
    pub fn skew_transform(&self, ab: &StateBracket, pa: bool, pb: bool) -> StateBracket {
        let mut out = StateBracket::new();
        let sg = &Scalar::int(self.conv.skew as i64) * &sign(pa && pb);
        for (m, x) in ab {
            let mut y = StateBracket::new();
            if m.chi == 0 {
                acc(&mut y, LambdaMonomial::ONE, x, &Scalar::one());
            } else {
                acc(&mut y, LambdaMonomial::CHI, x, &Scalar::int(-1));
                acc(&mut y, LambdaMonomial::ONE, &s_state(x), &Scalar::int(-1));
            }
            for _ in 0..m.j {
                let mut next = StateBracket::new();
                add_all(&mut next, &lambda_times(&y), &Scalar::int(-1));
                add_all(&mut next, &t_left(&y), &Scalar::int(-1));
                y = next;
            }
            add_all(&mut out, &y, &sg);
        }
        out
    }

    fn letter_state(&self, alpha: &[i64], l: JetLetter) -> State {
        let mut st = cartan_state(self.lat.rank(), &to_rat(alpha));
        if l.s {
            st = s_state(&st);
        }
        for _ in 0..l.k {
            st = t_state(&st);
        }
        st
    }

    fn jet_states(&self, alpha: &[i64], beta: &[i64], depth: u32) -> Vec<State> {
        let g: Vec<i64> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
        let gs = State::basis(Monomial::exp(to_rat(&g)));
        jet_table(depth)
            .iter()
            .map(|words| {
                let mut total = State::zero();
                for (w, c) in words {
                    let mut st = gs.clone();
                    for l in w.iter().rev() {
                        st = self.eng.normal_product(&self.letter_state(alpha, *l), &st);
                    }
                    total.add_state(&st, c);
                }
                total
            })
            .collect()
    }

    /// `[Γ_α Λ Γ_β] = ε(α,β) Σ_{j<n} λ^j/j! (χ A_{n−1−j} + B_{n−1−j})` with `n = −(α,β)`,
    /// `A_m = D^{2m}Γ_{α,β}/m!` and `B_m = D^{2m+1}Γ_{α,β}/m!`.
    fn gamma_states(&self, alpha: &[i64], beta: &[i64]) -> Result<StateBracket, Error> {
        let p = self.lat.pairing_int(alpha, beta)?;
        let mut out = StateBracket::new();
        if p >= 0 {
            return Ok(out);
        }
        if -p > MAX_JET_PAIRING {
            return Err(Error::Delegate(p));
        }
        let n = (-p) as u32;
        let jets = self.jet_states(alpha, beta, 2 * n - 1);
        let eps = Scalar::int(self.cocycle.epsilon(alpha, beta) as i64);
        for j in 0..n {
            let m = n - 1 - j;
            let c = &(&eps * &inv_factorial(j)) * &inv_factorial(m);
            acc(&mut out, LambdaMonomial::new(j, 1), &jets[2 * m as usize], &c);
            acc(&mut out, LambdaMonomial::new(j, 0), &jets[2 * m as usize + 1], &c);
        }
        Ok(out)
    }

    /// `[Γ_α Λ Γ_β]` for `(α,β) < 0`.
    pub fn gamma_gamma_bracket(&self, alpha: &[i64], beta: &[i64]) -> Result<BracketResult, Error> {
        let p = self.lat.pairing_int(alpha, beta)?;
        if p >= 0 {
            return Err(Error::NonNegativePairing(p));
        }
        Ok(self.result(&self.gamma_states(alpha, beta)?))
    }

    /// `D_Z^{(k|K)} Γ_{α,β}(Z,W)|_{Z=W} = D^{2k+K} Γ_{α,β}` as a sum of words.
    pub fn gamma_jets(&self, alpha: &[i64], beta: &[i64], k: u32, big_k: u8) -> Result<FieldExpr, Error> {
        self.check_rank(alpha.len())?;
        self.check_rank(beta.len())?;
        let g: Vec<i64> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
        let close = if g.iter().all(|x| *x == 0) { FieldExpr::Vacuum } else { FieldExpr::Gamma(g) };
        let table = jet_table(2 * k + big_k as u32);
        let words = table.last().expect("non-empty table");
        let mut terms = Vec::new();
        for (w, c) in words {
            let mut e = close.clone();
            for l in w.iter().rev() {
                let mut x = FieldExpr::cartan(alpha);
                if l.s {
                    x = x.s();
                }
                for _ in 0..l.k {
                    x = x.t();
                }
                e = if e == FieldExpr::Vacuum { x } else { FieldExpr::norm(x, e) };
            }
            terms.push(if c.is_one() { e } else { e.scale(c.clone()) });
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { FieldExpr::Sum(terms) })
    }

    /// `:b a:` rewritten as `(−1)^{p(a)p(b)} :a b: + ∫_{−∇}^0 [b_Λ a] dΛ`.
    pub fn quasi_commute(&self, b: &FieldExpr, a: &FieldExpr) -> Result<FieldExpr, Error> {
        let pa = self.parity(a)?;
        let pb = self.parity(b)?;
        let mut st = self.eng.normal_product(&self.state(a)?, &self.state(b)?).scale(&sign(pa && pb));
        let berezin = Scalar::int(self.conv.berezin as i64);
        for (m, x) in self.br(b, a)?.iter().filter(|(m, _)| m.chi == 1) {
            // ∫_{−∇}^0 χ λ^j dΛ = −(−T)^{j+1}/(j+1)
            let mut y = x.clone();
            for _ in 0..=m.j {
                y = t_state(&y);
            }
            let c = &(&berezin * &sign(m.j % 2 == 1)) * &inv_int(m.j as i64 + 1);
            st.add_state(&y, &c);
        }
        Ok(from_state(&st))
    }

    /// The ordinary brackets `[a_λ b]`, `[Sa_λ b]`, `[a_λ Sb]`, `[Sa_λ Sb]` contained in `[a_Λ b]`.
    pub fn expand_components(&self, br: &BracketResult, a: &FieldExpr, b: &FieldExpr) -> Result<ComponentExpansion, Error> {
        let pa = self.parity(a)?;
        let pb = self.parity(b)?;
        let states = self.bracket_states(br)?;
        for (m, st) in &states {
            let expect = !(pa ^ pb ^ (m.chi == 1));
            if state_parity(self.lat, st)?.is_some_and(|p| p != expect) {
                return Err(Error::Invalid(String::from("bracket coefficient has the wrong parity")));
            }
        }
        let part = |chi: u8| -> BTreeMap<u32, State> {
            states.iter().filter(|(m, _)| m.chi == chi).map(|(m, st)| (m.j, st.clone())).collect()
        };
        let (b0, b1) = (part(0), part(1));
        let sg = sign(pa);
        let mut a_sb: BTreeMap<u32, State> = BTreeMap::new();
        let mut sa_sb: BTreeMap<u32, State> = BTreeMap::new();
        let put = |map: &mut BTreeMap<u32, State>, j: u32, st: &State, c: &Scalar| {
            map.entry(j).or_default().add_state(st, c);
        };
        for (j, st) in &b1 {
            put(&mut a_sb, *j, &s_state(st), &sg);
            put(&mut sa_sb, j + 1, st, &-&sg);
        }
        for (j, st) in &b0 {
            put(&mut a_sb, *j, st, &-&sg);
            put(&mut sa_sb, *j, &s_state(st), &-&sg);
        }
        let series = |m: &BTreeMap<u32, State>| -> LambdaSeries {
            m.iter().filter(|(_, st)| !st.is_zero()).map(|(j, st)| (*j, from_state(st))).collect()
        };
        Ok(ComponentExpansion { a_b: series(&b1), sa_b: series(&b0), a_sb: series(&a_sb), sa_sb: series(&sa_sb) })
    }

    /// Equality of two `λ`-polynomials with expression coefficients.
    pub fn series_equal(&self, x: &LambdaSeries, y: &LambdaSeries) -> Result<bool, Error> {
        let keys: alloc::collections::BTreeSet<u32> = x.keys().chain(y.keys()).copied().collect();
        for j in keys {
            let sx = x.get(&j).map(|e| self.state(e)).transpose()?.unwrap_or_default();
            let sy = y.get(&j).map(|e| self.state(e)).transpose()?.unwrap_or_default();
            if sx != sy {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of two bracket results.
    pub fn bracket_equal(&self, x: &BracketResult, y: &BracketResult) -> Result<bool, Error> {
        Ok(self.bracket_states(x)? == self.bracket_states(y)?)
    }

    /// Scalar `(x, y)` for rational vectors.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Result<Rat, Error> {
        self.lat.pairing(x, y)
    }
}
