//! Free-field vertex operators on Fock states.
//!
//! The field of a monomial `ψ^{i_1}_{-k_1-1/2}⋯α_{j_1,-n_1}⋯e^γ` is the normally ordered
//! product of `∂^kψ^i/k!`, `∂^{n-1}h_j/(n-1)!` and
//! `Γ_γ(z) = e^γ z^{γ_0} E⁻(z) E⁺(z)`, so every product `a_(n)b` is computed exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactnum::{binom, factorial, LambdaMonomial, Scalar};
use crate::fock::space::{s_state, Monomial, State};
use crate::lattice::{Cocycle, Lattice};
use crate::Rat;

/// Laurent polynomial in `z` with rational exponents and state coefficients.
pub type Series = BTreeMap<Rat, State>;

fn push(series: &mut Series, p: Rat, st: &State, c: &Scalar) {
    if st.is_zero() || c.is_zero() {
        return;
    }
    let e = series.entry(p).or_default();
    e.add_state(st, c);
    if e.is_zero() {
        series.remove(&p);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Fermion { k: u32, i: usize },
    Boson { n: u32, i: usize },
}

impl Letter {
    fn odd(self) -> bool {
        matches!(self, Letter::Fermion { .. })
    }
}

/// Vertex operators of `V_Q` acting on the sector `μ + Q`.
#[derive(Clone, Debug)]
pub struct VertexEngine<'a> {
    pub lat: &'a Lattice,
    pub cocycle: &'a Cocycle,
    pub mu: Vec<Rat>,
}

impl<'a> VertexEngine<'a> {
    pub fn new(lat: &'a Lattice, cocycle: &'a Cocycle) -> Self {
        VertexEngine { lat, cocycle, mu: alloc::vec![Rat::zero(); lat.rank()] }
    }

    pub fn with_coset(lat: &'a Lattice, cocycle: &'a Cocycle, mu: Vec<Rat>) -> Self {
        VertexEngine { lat, cocycle, mu }
    }

    fn gamma_parity(&self, g: &[i64]) -> bool {
        self.lat.pair_int(g, g).rem_euclid(2) == 1
    }

    /// All terms of `Y(a, z) v` with exponent `≤ pmax`.
    pub fn apply_truncated(&self, a: &Monomial, v: &State, pmax: Rat) -> Series {
        let letters: Vec<Letter> = a
            .fermions
            .iter()
            .map(|&(k, i)| Letter::Fermion { k, i })
            .chain(a.bosons.iter().map(|&(n, i)| Letter::Boson { n, i }))
            .collect();
        let gamma: Vec<i64> = a
            .charge
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "field charge must lie in the lattice");
                c.to_integer()
            })
            .collect();
        // parity of the operator formed by letters f.. together with Γ_γ
        let mut tail = alloc::vec![self.gamma_parity(&gamma); letters.len() + 1];
        for f in (0..letters.len()).rev() {
            tail[f] = tail[f + 1] ^ letters[f].odd();
        }
        let mut out = Series::new();
        for (m, c) in v.iter() {
            let s = self.op(&letters, &tail, &gamma, 0, m, pmax);
            for (p, st) in &s {
                push(&mut out, *p, st, c);
            }
        }
        out
    }

    fn op(&self, letters: &[Letter], tail: &[bool], gamma: &[i64], f: usize, v: &Monomial, pmax: Rat) -> Series {
        if f == letters.len() {
            return self.gamma_op(gamma, v, pmax);
        }
        let mut out = Series::new();
        let rest = self.op(letters, tail, gamma, f + 1, v, pmax);
        for (p, st) in &rest {
            let room = (pmax - p).floor().to_integer();
            for e in 0..=room {
                let created = create(letters[f], e as u32, st);
                push(&mut out, p + Rat::from(e), &created, &Scalar::one());
            }
        }
        let sigma = if letters[f].odd() && tail[f + 1] { -1 } else { 1 };
        for (c, q, w) in self.annihilation_terms(letters[f], v) {
            let sub = self.op(letters, tail, gamma, f + 1, &w, pmax - q);
            let c = c * Scalar::int(sigma);
            for (p, st) in &sub {
                push(&mut out, p + q, st, &c);
            }
        }
        out
    }

    fn annihilation_terms(&self, l: Letter, v: &Monomial) -> Vec<(Scalar, Rat, Monomial)> {
        let mut out = Vec::new();
        match l {
            Letter::Fermion { k, i } => {
                let mut modes: Vec<u32> = v.fermions.iter().map(|&(kk, _)| kk).collect();
                modes.dedup();
                for kp in modes {
                    let c = Scalar::from_bigint(binom(kp as i64 + k as i64, k)) * Scalar::sign(k);
                    let q = Rat::from(-(kp as i64) - 1 - k as i64);
                    for (g, w) in v.annihilate_fermion(self.lat, kp, i) {
                        out.push((&c * &Scalar::int(g), q, w));
                    }
                }
            }
            Letter::Boson { n, i } => {
                let h0 = self.lat.pair_basis(i, &v.charge);
                if !h0.is_zero() {
                    out.push((Scalar::sign(n - 1) * Scalar::from_ratio64(h0), Rat::from(-(n as i64)), v.clone()));
                }
                let mut modes: Vec<u32> = v.bosons.iter().map(|&(m, _)| m).collect();
                modes.dedup();
                for m in modes {
                    let c = Scalar::from_bigint(binom(-(m as i64) - 1, n - 1));
                    let q = Rat::from(-(m as i64) - n as i64);
                    for (g, w) in v.annihilate_boson(self.lat, m, i) {
                        out.push((&c * &Scalar::int(g), q, w));
                    }
                }
            }
        }
        out
    }

    fn gamma_op(&self, gamma: &[i64], v: &Monomial, pmax: Rat) -> Series {
        let mut out = Series::new();
        let g_rat: Vec<Rat> = gamma.iter().map(|&x| Rat::from(x)).collect();
        let base = self.lat.pair(&g_rat, &v.charge);
        let shifted: Vec<Rat> = v.charge.iter().zip(&self.mu).map(|(c, m)| c - m).collect();
        let mut sign = self.cocycle.epsilon_rat(gamma, &shifted) as i64;
        if self.gamma_parity(gamma) && v.fermion_count() % 2 == 1 {
            sign = -sign;
        }
        let sign = Scalar::int(sign);
        for (p, st) in self.e_plus(gamma, v) {
            let budget = (pmax - base - p).floor().to_integer();
            if budget < 0 {
                continue;
            }
            for (e, st2) in self.e_minus(gamma, &st, budget as u32) {
                let moved = st2.map(|m| {
                    let mut m = m.clone();
                    for (c, g) in m.charge.iter_mut().zip(gamma) {
                        *c += Rat::from(*g);
                    }
                    State::basis(m)
                });
                push(&mut out, base + p + Rat::from(e as i64), &moved, &sign);
            }
        }
        out
    }

    /// `exp(−Σ_{n>0} γ_n z^{−n}/n)` applied to a monomial.
    fn e_plus(&self, gamma: &[i64], v: &Monomial) -> Series {
        let g_rat: Vec<Rat> = gamma.iter().map(|&x| Rat::from(x)).collect();
        let mut total = Series::new();
        let mut term = Series::new();
        term.insert(Rat::zero(), State::basis(v.clone()));
        let mut k = 0i64;
        while !term.is_empty() {
            for (p, st) in &term {
                push(&mut total, *p, st, &Scalar::one());
            }
            k += 1;
            let mut next = Series::new();
            for (p, st) in &term {
                for (m, c) in st.iter() {
                    for (pos, &(n, j)) in m.bosons.iter().enumerate() {
                        let pj = self.lat.pair_basis(j, &g_rat);
                        if pj.is_zero() {
                            continue;
                        }
                        let mut w = m.clone();
                        w.bosons.remove(pos);
                        let coef = c * &Scalar::from_ratio64(-pj / Rat::from(k));
                        push(&mut next, p - Rat::from(n as i64), &State::basis(w), &coef);
                    }
                }
            }
            term = next;
        }
        total
    }

    /// `exp(Σ_{n>0} γ_{−n} zⁿ/n)` applied to a state, keeping powers `≤ budget`.
    fn e_minus(&self, gamma: &[i64], v: &State, budget: u32) -> BTreeMap<u32, State> {
        let mut total: BTreeMap<u32, State> = BTreeMap::new();
        let mut term: BTreeMap<u32, State> = BTreeMap::new();
        term.insert(0, v.clone());
        let mut k = 0i64;
        while !term.is_empty() {
            for (p, st) in &term {
                total.entry(*p).or_default().add_state(st, &Scalar::one());
            }
            k += 1;
            let mut next: BTreeMap<u32, State> = BTreeMap::new();
            for (p, st) in &term {
                for n in 1..=budget.saturating_sub(*p) {
                    for (i, &gi) in gamma.iter().enumerate() {
                        if gi == 0 {
                            continue;
                        }
                        let c = Scalar::ratio(gi, n as i64 * k);
                        let created = st.map(|m| State::basis(m.create_boson(n, i)));
                        next.entry(p + n).or_default().add_state(&created, &c);
                    }
                }
            }
            next.retain(|_, s| !s.is_zero());
            term = next;
        }
        total.retain(|_, s| !s.is_zero());
        total
    }

    /// Coefficient of `z^p` in `Y(a, z) b`.
    pub fn coefficient(&self, a: &State, p: Rat, b: &State) -> State {
        let mut out = State::zero();
        for (m, c) in a.iter() {
            if let Some(st) = self.apply_truncated(m, b, p).get(&p) {
                out.add_state(st, c);
            }
        }
        out
    }

    /// The product `a_(n) b`, the coefficient of `z^{−n−1}`.
    pub fn n_product(&self, a: &State, n: i64, b: &State) -> State {
        self.coefficient(a, Rat::from(-n - 1), b)
    }

    /// Normally ordered product `:ab: = a_(−1) b`.
    pub fn normal_product(&self, a: &State, b: &State) -> State {
        self.n_product(a, -1, b)
    }

    /// Largest `j` for which `a_(j) b` can be non-zero, from the energy bound.
    pub fn max_pole(&self, a: &State, b: &State) -> Option<i64> {
        let mut best: Option<i64> = None;
        for (ma, _) in a.iter() {
            for (mb, _) in b.iter() {
                let g: Vec<Rat> = ma.charge.iter().zip(&mb.charge).map(|(x, y)| x + y).collect();
                let bound = ma.energy(self.lat, false) + mb.energy(self.lat, false)
                    - Rat::one()
                    - self.lat.pair(&g, &g) / Rat::from(2);
                let j = bound.floor().to_integer();
                if j >= 0 {
                    best = Some(best.map_or(j, |b: i64| b.max(j)));
                }
            }
        }
        best
    }

    /// `[a_Λ b] = Σ_j λ^j/j! ((Sa)_(j) b + χ a_(j) b)`, computed directly on states.
    pub fn lambda_bracket(&self, a: &State, b: &State) -> BTreeMap<LambdaMonomial, State> {
        let mut out = BTreeMap::new();
        let sa = s_state(a);
        for (x, chi) in [(&sa, 0u8), (a, 1u8)] {
            let Some(jmax) = self.max_pole(x, b) else { continue };
            for j in 0..=jmax {
                let st = self.n_product(x, j, b);
                if !st.is_zero() {
                    let inv = Scalar::from_bigint(factorial(j as u32)).inv().expect("non-zero factorial");
                    out.insert(LambdaMonomial::new(j as u32, chi), st.scale(&inv));
                }
            }
        }
        out
    }
}

fn create(l: Letter, e: u32, st: &State) -> State {
    match l {
        Letter::Fermion { k, i } => {
            let c = Scalar::from_bigint(binom(e as i64 + k as i64, k));
            st.map(|m| match m.create_fermion(e + k, i) {
                Some((s, w)) => State::term(w, &c * &Scalar::int(s as i64)),
                None => State::zero(),
            })
        }
        Letter::Boson { n, i } => {
            let c = Scalar::from_bigint(binom(n as i64 + e as i64 - 1, n - 1));
            st.map(|m| State::term(m.create_boson(n + e, i), c.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::space::t_state;
    use crate::lattice::build_cocycle;
    use alloc::vec;

    fn setup(g: i64) -> (Lattice, Cocycle) {
        let l = Lattice::new(vec![vec![g]]).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        (l, c)
    }

    fn ex(c: i64) -> State {
        State::basis(Monomial::exp(vec![Rat::from(c)]))
    }

    #[test]
    fn vacuum_is_unit() {
        let (l, c) = setup(2);
        let eng = VertexEngine::new(&l, &c);
        let a = ex(1);
        let vac = State::vacuum(1);
        assert_eq!(eng.normal_product(&vac, &a), a);
        assert_eq!(eng.normal_product(&a, &vac), a);
        assert_eq!(eng.n_product(&a, -2, &vac), t_state(&a));
    }

    #[test]
    fn free_fermion_pairing() {
        let (l, c) = setup(2);
        let eng = VertexEngine::new(&l, &c);
        let psi = State::basis(Monomial::vacuum(1).create_fermion(0, 0).unwrap().1);
        assert_eq!(eng.n_product(&psi, 0, &psi), State::term(Monomial::vacuum(1), Scalar::int(2)));
    }

    #[test]
    fn sl2_current_bracket() {
        // e^α_(0) e^{−α} = h and e^α_(1) e^{−α} = 1 for (α,α) = 2
        let (l, c) = setup(2);
        let eng = VertexEngine::new(&l, &c);
        let h = State::basis(Monomial::vacuum(1).create_boson(1, 0));
        assert_eq!(eng.n_product(&ex(1), 0, &ex(-1)), h);
        assert_eq!(eng.n_product(&ex(1), 1, &ex(-1)), State::vacuum(1));
    }

    #[test]
    fn norm_two_superbracket() {
        let (l, c) = setup(2);
        let eng = VertexEngine::new(&l, &c);
        let vac = Monomial::vacuum(1);
        let fer = |k: u32, m: &Monomial| m.create_fermion(k, 0).unwrap().1;
        let a = State::basis(fer(0, &vac));
        let ta = State::basis(fer(1, &vac));
        let sa = State::basis(vac.create_boson(1, 0));
        let a_sa = State::basis(fer(0, &vac.create_boson(1, 0)));
        let br = eng.lambda_bracket(&ex(1), &ex(-1));
        assert_eq!(br[&LambdaMonomial::ONE], &ta + &a_sa);
        assert_eq!(br[&LambdaMonomial::CHI], sa);
        assert_eq!(br[&LambdaMonomial::LAMBDA], a);
        assert_eq!(br[&LambdaMonomial::new(1, 1)], State::vacuum(1));
        assert_eq!(br.len(), 4);
    }
}
