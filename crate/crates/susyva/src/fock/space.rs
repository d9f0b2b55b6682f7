//! Oscillator monomials `ψ…ψ α…α e^γ` and exact linear combinations of them.
//!
//! Species indices refer to the lattice basis `α_1, …, α_r`, which need not be
//! orthonormal: `{ψ^i_r, ψ^j_s} = g_ij δ_{r+s,0}` and `[α_{i,m}, α_{j,n}] = m g_ij δ_{m+n,0}`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::exactnum::Scalar;
use crate::lattice::Lattice;
use crate::Rat;

/// A basis vector of a Fock sector.
///
/// `fermions` holds `(k, i)` for `ψ^i_{-k-1/2}` (NS) or `ψ^i_{-k}` (twisted), strictly
/// increasing; `bosons` holds `(n, i)` for `α_{i,-n}`, `n ≥ 1`, non-decreasing.
/// The operators act in the written order on `e^γ` with `γ = charge`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub fermions: Vec<(u32, usize)>,
    pub bosons: Vec<(u32, usize)>,
    pub charge: Vec<Rat>,
}

impl Monomial {
    pub fn vacuum(rank: usize) -> Self {
        Monomial { fermions: Vec::new(), bosons: Vec::new(), charge: alloc::vec![Rat::zero(); rank] }
    }

    pub fn exp(charge: Vec<Rat>) -> Self {
        Monomial { fermions: Vec::new(), bosons: Vec::new(), charge }
    }

    pub fn fermion_count(&self) -> usize {
        self.fermions.len()
    }

    /// Oscillator part of the energy: `Σ (k + 1/2) + Σ n` in NS, `Σ k + Σ n` twisted.
    pub fn oscillator_energy(&self, twisted: bool) -> Rat {
        let half = if twisted { Rat::zero() } else { Rat::new(1, 2) };
        let f: Rat = self.fermions.iter().map(|&(k, _)| Rat::from(k as i64) + half).sum();
        let b: i64 = self.bosons.iter().map(|&(n, _)| n as i64).sum();
        f + Rat::from(b)
    }

    /// `Σ (k + 1/2) + Σ n + (γ,γ)/2` (plus `r/16` in a twisted sector).
    pub fn energy(&self, lat: &Lattice, twisted: bool) -> Rat {
        let mut e = self.oscillator_energy(twisted) + lat.pair(&self.charge, &self.charge) / Rat::from(2);
        if twisted {
            e += Rat::new(lat.rank() as i64, 16);
        }
        e
    }

    /// `ψ^i_{-k-1/2}` applied on the left; `None` when the mode is already occupied.
    pub fn create_fermion(&self, k: u32, i: usize) -> Option<(i8, Monomial)> {
        match self.fermions.binary_search(&(k, i)) {
            Ok(_) => None,
            Err(pos) => {
                let mut m = self.clone();
                m.fermions.insert(pos, (k, i));
                Some((if pos % 2 == 0 { 1 } else { -1 }, m))
            }
        }
    }

    /// `ψ^i_{k+1/2}` applied on the left: `Σ_p (−1)^p g_ij` over occupied `(k, j)`.
    pub fn annihilate_fermion(&self, lat: &Lattice, k: u32, i: usize) -> Vec<(i64, Monomial)> {
        let mut out = Vec::new();
        for (p, &(kk, j)) in self.fermions.iter().enumerate() {
            if kk == k && lat.g(i, j) != 0 {
                let mut m = self.clone();
                m.fermions.remove(p);
                let s = if p % 2 == 0 { 1 } else { -1 };
                out.push((s * lat.g(i, j), m));
            }
        }
        out
    }

    pub fn create_boson(&self, n: u32, i: usize) -> Monomial {
        let mut m = self.clone();
        let pos = m.bosons.partition_point(|x| *x <= (n, i));
        m.bosons.insert(pos, (n, i));
        m
    }

    /// `α_{i,n}` for `n ≥ 1`: `n g_ij` per occupied `α_{j,-n}`.
    pub fn annihilate_boson(&self, lat: &Lattice, n: u32, i: usize) -> Vec<(i64, Monomial)> {
        let mut out = Vec::new();
        for (p, &(nn, j)) in self.bosons.iter().enumerate() {
            if nn == n && lat.g(i, j) != 0 {
                let mut m = self.clone();
                m.bosons.remove(p);
                out.push((n as i64 * lat.g(i, j), m));
            }
        }
        out
    }

    pub fn is_vacuum(&self) -> bool {
        self.fermions.is_empty() && self.bosons.is_empty() && self.charge.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for &(k, i) in &self.fermions {
            parts.push(format!("psi{}[{}]", k, i + 1));
        }
        for &(n, i) in &self.bosons {
            parts.push(format!("a{}[{}]", n, i + 1));
        }
        let g: Vec<String> = self.charge.iter().map(|c| format!("{}", c)).collect();
        parts.push(format!("e^({})", g.join(",")));
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite linear combination of monomials with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct State {
    terms: BTreeMap<Monomial, Scalar>,
}

impl State {
    pub fn zero() -> Self {
        State { terms: BTreeMap::new() }
    }

    pub fn basis(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut s = State::zero();
        s.add_term(m, c);
        s
    }

    pub fn vacuum(rank: usize) -> Self {
        Self::basis(Monomial::vacuum(rank))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_state(&mut self, other: &State, c: &Scalar) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> State {
        let mut s = State::zero();
        s.add_state(self, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Apply a map defined on monomials, extended linearly.
    pub fn map<F>(&self, mut f: F) -> State
    where
        F: FnMut(&Monomial) -> State,
    {
        let mut out = State::zero();
        for (m, c) in &self.terms {
            out.add_state(&f(m), c);
        }
        out
    }
}

impl core::ops::Add for &State {
    type Output = State;
    fn add(self, rhs: &State) -> State {
        let mut s = self.clone();
        s.add_state(rhs, &Scalar::one());
        s
    }
}

impl core::ops::Sub for &State {
    type Output = State;
    fn sub(self, rhs: &State) -> State {
        let mut s = self.clone();
        s.add_state(rhs, &Scalar::int(-1));
        s
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}) {}", c, m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sgn(p: usize) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The odd derivation `S` of the NS sector: `[S, ψ_r] = α_{r−1/2}`, `[S, α_n] = −n ψ_{n−1/2}`,
/// `S e^γ = ψ^γ_{−1/2} e^γ`.
pub fn apply_s(m: &Monomial) -> State {
    let mut out = State::zero();
    for (p, &(k, i)) in m.fermions.iter().enumerate() {
        let mut mm = m.clone();
        mm.fermions.remove(p);
        out.add_term(mm.create_boson(k + 1, i), Scalar::int(sgn(p)));
    }
    for (p, &(n, i)) in m.bosons.iter().enumerate() {
        let mut mm = m.clone();
        mm.bosons.remove(p);
        if let Some((s, r)) = mm.create_fermion(n, i) {
            out.add_term(r, Scalar::int(s as i64 * n as i64));
        }
    }
    for (i, g) in m.charge.iter().enumerate() {
        if !g.is_zero() {
            if let Some((s, r)) = m.create_fermion(0, i) {
                out.add_term(r, Scalar::from_ratio64(*g) * Scalar::int(s as i64));
            }
        }
    }
    out
}

/// The translation operator `T = L_{−1}` of the NS sector.
pub fn apply_t(m: &Monomial) -> State {
    let mut out = State::zero();
    for (p, &(k, i)) in m.fermions.iter().enumerate() {
        let mut mm = m.clone();
        mm.fermions.remove(p);
        if let Some((s, r)) = mm.create_fermion(k + 1, i) {
            out.add_term(r, Scalar::int(sgn(p) * s as i64 * (k as i64 + 1)));
        }
    }
    for (p, &(n, i)) in m.bosons.iter().enumerate() {
        let mut mm = m.clone();
        mm.bosons.remove(p);
        out.add_term(mm.create_boson(n + 1, i), Scalar::int(n as i64));
    }
    for (i, g) in m.charge.iter().enumerate() {
        if !g.is_zero() {
            out.add_term(m.create_boson(1, i), Scalar::from_ratio64(*g));
        }
    }
    out
}

pub fn s_state(v: &State) -> State {
    v.map(apply_s)
}

pub fn t_state(v: &State) -> State {
    v.map(apply_t)
}

/// `(−1)^{#fermions}` on each monomial.
pub fn fermion_sign_state(v: &State) -> State {
    v.map(|m| State::term(m.clone(), Scalar::int(sgn(m.fermion_count()))))
}
