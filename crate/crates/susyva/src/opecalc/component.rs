//! Ordinary `λ`-brackets of component fields over a declared set of generators.
//!
//! The recursion uses `[Ta_λ b] = −λ[a_λ b]`, `[a_λ Tb] = (λ+T)[a_λ b]`, the
//! non-commutative Wick formula and skew-symmetry `[b_λ a] = −(−1)^{p(a)p(b)}[a_{−λ−T} b]`.
//! An optional realization by states of a lattice vertex algebra gives the
//! equality test used for canonical comparison.

use alloc::boxed::Box;
use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Report, Check};
use crate::exactnum::Scalar;
use crate::fock::space::t_state;
use crate::fock::{State, VertexEngine};
use crate::lattice::{Cocycle, Lattice};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompExpr {
    Vac,
    Gen(usize),
    T(Box<CompExpr>),
    Smul(Scalar, Box<CompExpr>),
    Sum(Vec<CompExpr>),
    Norm(Box<CompExpr>, Box<CompExpr>),
}

impl CompExpr {
    pub fn zero() -> Self {
        CompExpr::Sum(Vec::new())
    }

    pub fn t(self) -> Self {
        CompExpr::T(Box::new(self))
    }

    pub fn scale(self, c: Scalar) -> Self {
        CompExpr::Smul(c, Box::new(self))
    }

    pub fn norm(a: CompExpr, b: CompExpr) -> Self {
        CompExpr::Norm(Box::new(a), Box::new(b))
    }

    pub fn sum(v: Vec<CompExpr>) -> Self {
        CompExpr::Sum(v)
    }

    /// Zero by construction, without evaluation.
    pub fn is_trivially_zero(&self) -> bool {
        match self {
            CompExpr::Sum(v) => v.iter().all(CompExpr::is_trivially_zero),
            CompExpr::Smul(c, x) => c.is_zero() || x.is_trivially_zero(),
            CompExpr::T(x) => x.is_trivially_zero(),
            CompExpr::Norm(a, b) => a.is_trivially_zero() || b.is_trivially_zero(),
            CompExpr::Vac | CompExpr::Gen(_) => false,
        }
    }
}

/// An ordinary `λ`-bracket `Σ_j λ^j X_j`.
pub type ComponentBracket = BTreeMap<u32, CompExpr>;

fn add_term(out: &mut ComponentBracket, j: u32, e: CompExpr) {
    if e.is_trivially_zero() {
        return;
    }
    match out.entry(j) {
        Entry::Vacant(v) => {
            v.insert(e);
        }
        Entry::Occupied(mut o) => match o.get_mut() {
            CompExpr::Sum(v) => v.push(e),
            old => {
                let prev = core::mem::replace(old, CompExpr::zero());
                *old = CompExpr::Sum(alloc::vec![prev, e]);
            }
        },
    }
}

fn add_scaled(out: &mut ComponentBracket, x: &ComponentBracket, c: &Scalar) {
    for (j, e) in x {
        let e = if c.is_one() { e.clone() } else { e.clone().scale(c.clone()) };
        add_term(out, *j, e);
    }
}

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

/// Realization of the generators by states of a lattice vertex algebra.
#[derive(Clone, Debug)]
pub struct Realization {
    pub lattice: Lattice,
    pub cocycle: Cocycle,
    pub states: Vec<State>,
}

/// Generators with parities, a table of base brackets and an optional realization.
#[derive(Clone, Debug)]
pub struct ComponentAlgebra {
    names: Vec<String>,
    parity: Vec<bool>,
    table: BTreeMap<(usize, usize), ComponentBracket>,
    others_zero: bool,
    realization: Option<Realization>,
}

impl ComponentAlgebra {
    /// Generators as `(name, odd)`.
    pub fn new(gens: &[(&str, bool)]) -> Self {
        ComponentAlgebra {
            names: gens.iter().map(|(n, _)| n.to_string()).collect(),
            parity: gens.iter().map(|(_, p)| *p).collect(),
            table: BTreeMap::new(),
            others_zero: false,
            realization: None,
        }
    }

    /// Treat undeclared generator pairs as commuting.
    pub fn with_others_zero(mut self) -> Self {
        self.others_zero = true;
        self
    }

    pub fn with_realization(mut self, lattice: Lattice, cocycle: Cocycle, states: Vec<State>) -> Result<Self, Error> {
        if states.len() != self.names.len() {
            return Err(Error::RankMismatch { expected: self.names.len(), got: states.len() });
        }
        self.realization = Some(Realization { lattice, cocycle, states });
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn index(&self, name: &str) -> Result<usize, Error> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::Invalid(format!("unknown generator `{name}`")))
    }

    pub fn gen(&self, name: &str) -> Result<CompExpr, Error> {
        Ok(CompExpr::Gen(self.index(name)?))
    }

    /// Declare `[a_λ b]`.
    pub fn declare(&mut self, a: &str, b: &str, br: ComponentBracket) -> Result<(), Error> {
        let key = (self.index(a)?, self.index(b)?);
        self.table.insert(key, br);
        Ok(())
    }

    pub fn parity(&self, e: &CompExpr) -> Result<bool, Error> {
        Ok(match e {
            CompExpr::Vac => false,
            CompExpr::Gen(i) => *self.parity.get(*i).ok_or_else(|| Error::Invalid(format!("generator index {i}")))?,
            CompExpr::T(x) | CompExpr::Smul(_, x) => self.parity(x)?,
            CompExpr::Norm(a, b) => self.parity(a)? ^ self.parity(b)?,
            CompExpr::Sum(v) => match v.iter().find(|x| !x.is_trivially_zero()) {
                Some(x) => self.parity(x)?,
                None => false,
            },
        })
    }

    /// `[a_λ b]`.
    pub fn ordinary_bracket(&self, a: &CompExpr, b: &CompExpr) -> Result<ComponentBracket, Error> {
        let raw = self.br(a, b)?;
        self.prune(raw)
    }

    /// Drop coefficients that vanish in the realization.
    fn prune(&self, x: ComponentBracket) -> Result<ComponentBracket, Error> {
        if self.realization.is_none() {
            return Ok(x);
        }
        let mut out = ComponentBracket::new();
        for (j, e) in x {
            if !self.state(&e)?.is_zero() {
                out.insert(j, e);
            }
        }
        Ok(out)
    }

    fn base(&self, i: usize, j: usize) -> Result<ComponentBracket, Error> {
        if let Some(br) = self.table.get(&(i, j)) {
            return Ok(br.clone());
        }
        if let Some(br) = self.table.get(&(j, i)) {
            return Ok(self.skew(br, self.parity[j], self.parity[i]));
        }
        if self.others_zero {
            Ok(ComponentBracket::new())
        } else {
            Err(Error::UndeclaredPair(self.names[i].clone(), self.names[j].clone()))
        }
    }

    /// `[b_λ a]` from `[a_λ b]`.
    pub fn skew(&self, ab: &ComponentBracket, pa: bool, pb: bool) -> ComponentBracket {
        let mut out = ComponentBracket::new();
        let sg = -sign(pa && pb);
        for (j, x) in ab {
            // (−λ−T)^j x = Σ_m C(j,m) (−λ)^m (−T)^{j−m} x
            for m in 0..=*j {
                let c = Scalar::from_bigint(crate::exactnum::binom(*j as i64, m)) * sign(*j % 2 == 1);
                let mut e = x.clone();
                for _ in 0..(j - m) {
                    e = e.t();
                }
                add_term(&mut out, m, e.scale(&c * &sg));
            }
        }
        out
    }

    fn br(&self, a: &CompExpr, b: &CompExpr) -> Result<ComponentBracket, Error> {
        use CompExpr::*;
        let mut out = ComponentBracket::new();
        match (a, b) {
            (Vac, _) | (_, Vac) => {}
            (Sum(v), _) => {
                for x in v {
                    add_scaled(&mut out, &self.br(x, b)?, &Scalar::one());
                }
            }
            (Smul(c, x), _) => add_scaled(&mut out, &self.br(x, b)?, c),
            (_, Sum(v)) => {
                for y in v {
                    add_scaled(&mut out, &self.br(a, y)?, &Scalar::one());
                }
            }
            (_, Smul(c, y)) => add_scaled(&mut out, &self.br(a, y)?, c),
            (T(x), _) => {
                for (j, e) in self.br(x, b)? {
                    add_term(&mut out, j + 1, e.scale(Scalar::int(-1)));
                }
            }
            (_, T(y)) => {
                for (j, e) in self.br(a, y)? {
                    add_term(&mut out, j + 1, e.clone());
                    add_term(&mut out, j, e.t());
                }
            }
            (_, Norm(y, z)) => out = self.wick(a, y, z)?,
            (Norm(..), _) => {
                let x = self.br(b, a)?;
                out = self.skew(&x, self.parity(b)?, self.parity(a)?);
            }
            (Gen(i), Gen(j)) => out = self.base(*i, *j)?,
        }
        Ok(out)
    }

    /// `[a_λ :bc:] = :[a_λ b]c: + (−1)^{p(a)p(b)} :b[a_λ c]: + ∫_0^λ [[a_λ b]_μ c] dμ`.
    fn wick(&self, a: &CompExpr, y: &CompExpr, z: &CompExpr) -> Result<ComponentBracket, Error> {
        let s = sign(self.parity(a)? && self.parity(y)?);
        let ay = self.prune(self.br(a, y)?)?;
        let az = self.br(a, z)?;
        let mut out = ComponentBracket::new();
        for (j, x) in &ay {
            add_term(&mut out, *j, CompExpr::norm(x.clone(), z.clone()));
        }
        for (j, x) in &az {
            add_term(&mut out, *j, CompExpr::norm(y.clone(), x.clone()).scale(s.clone()));
        }
        for (j, x) in &ay {
            for (k, w) in self.br(x, z)? {
                add_term(&mut out, j + k + 1, w.scale(Scalar::ratio(1, k as i64 + 1)));
            }
        }
        Ok(out)
    }

    /// The state realizing an expression.
    pub fn state(&self, e: &CompExpr) -> Result<State, Error> {
        let re = self.realization.as_ref().ok_or_else(|| Error::Invalid(String::from("algebra has no realization")))?;
        let eng = VertexEngine::new(&re.lattice, &re.cocycle);
        self.state_with(&eng, re, e)
    }

    fn state_with(&self, eng: &VertexEngine<'_>, re: &Realization, e: &CompExpr) -> Result<State, Error> {
        Ok(match e {
            CompExpr::Vac => State::vacuum(re.lattice.rank()),
            CompExpr::Gen(i) => re.states.get(*i).cloned().ok_or_else(|| Error::Invalid(format!("generator index {i}")))?,
            CompExpr::T(x) => t_state(&self.state_with(eng, re, x)?),
            CompExpr::Smul(c, x) => self.state_with(eng, re, x)?.scale(c),
            CompExpr::Sum(v) => {
                let mut s = State::zero();
                for x in v {
                    s.add_state(&self.state_with(eng, re, x)?, &Scalar::one());
                }
                s
            }
            CompExpr::Norm(a, b) => eng.normal_product(&self.state_with(eng, re, a)?, &self.state_with(eng, re, b)?),
        })
    }

    pub fn equal(&self, a: &CompExpr, b: &CompExpr) -> Result<bool, Error> {
        Ok(self.state(a)? == self.state(b)?)
    }

    pub fn bracket_equal(&self, x: &ComponentBracket, y: &ComponentBracket) -> Result<bool, Error> {
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

    /// Check the declared table against the realization's own brackets `[a_λ b] = Σ λ^j/j! a_(j)b`.
    pub fn check_table(&self) -> Result<Report, Error> {
        let re = self.realization.as_ref().ok_or_else(|| Error::Invalid(String::from("algebra has no realization")))?;
        let eng = VertexEngine::new(&re.lattice, &re.cocycle);
        let mut report = Report::default();
        for i in 0..self.names.len() {
            for j in 0..self.names.len() {
                let declared = match self.base(i, j) {
                    Ok(b) => b,
                    Err(Error::UndeclaredPair(..)) => continue,
                    Err(e) => return Err(e),
                };
                let (a, b) = (&re.states[i], &re.states[j]);
                let mut actual = BTreeMap::new();
                if let Some(top) = eng.max_pole(a, b) {
                    for n in 0..=top {
                        let st = eng.n_product(a, n, b);
                        if !st.is_zero() {
                            let inv = Scalar::from_bigint(crate::exactnum::factorial(n as u32)).inv()?;
                            actual.insert(n as u32, st.scale(&inv));
                        }
                    }
                }
                let mut want = BTreeMap::new();
                for (k, e) in &declared {
                    let st = self.state_with(&eng, re, e)?;
                    if !st.is_zero() {
                        want.insert(*k, st);
                    }
                }
                let name = format!("[{}_λ {}]", self.names[i], self.names[j]);
                report.checks.push(Check {
                    name,
                    passed: actual == want,
                    lhs: self.render_bracket(&declared),
                    rhs: format!("{actual:?}"),
                });
            }
        }
        Ok(report)
    }

    /// Check that declared pairs in both orders agree with skew-symmetry.
    pub fn check_skew_consistency(&self) -> Result<Report, Error> {
        let mut report = Report::default();
        for (&(i, j), ab) in &self.table {
            if i > j {
                continue;
            }
            if let Some(ba) = self.table.get(&(j, i)) {
                let derived = self.skew(ab, self.parity[i], self.parity[j]);
                let ok = if self.realization.is_some() { self.bracket_equal(&derived, ba)? } else { &derived == ba };
                report.push(
                    format!("skew [{}_λ {}]", self.names[j], self.names[i]),
                    ok,
                    self.render_bracket(ba),
                    self.render_bracket(&derived),
                );
            }
        }
        Ok(report)
    }

    pub fn render(&self, e: &CompExpr) -> String {
        match e {
            CompExpr::Vac => String::from("1"),
            CompExpr::Gen(i) => self.names.get(*i).cloned().unwrap_or_else(|| format!("#{i}")),
            CompExpr::T(x) => format!("T({})", self.render(x)),
            CompExpr::Smul(c, x) => format!("{c}*{}", self.render_atom(x)),
            CompExpr::Sum(v) if v.is_empty() => String::from("0"),
            CompExpr::Sum(v) => v.iter().map(|x| self.render(x)).collect::<Vec<_>>().join(" + "),
            CompExpr::Norm(a, b) => format!(":{} {}:", self.render_atom(a), self.render_atom(b)),
        }
    }

    fn render_atom(&self, e: &CompExpr) -> String {
        match e {
            CompExpr::Sum(v) if v.len() > 1 => format!("({})", self.render(e)),
            CompExpr::Smul(..) => format!("({})", self.render(e)),
            _ => self.render(e),
        }
    }

    pub fn render_bracket(&self, br: &ComponentBracket) -> String {
        if br.is_empty() {
            return String::from("0");
        }
        br.iter().map(|(j, e)| format!("lambda^{j} : {}", self.render(e))).collect::<Vec<_>>().join(" ; ")
    }
}
