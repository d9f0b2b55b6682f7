//! Truncated sectors `V_{μ+Q}`, their ordered bases and exact sparse mode matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::charmod::QSeries;
use crate::exactnum::{binom, factorial, LambdaMonomial, Scalar};
use crate::fock::space::{s_state, t_state, Monomial, State};
use crate::fock::vertex::VertexEngine;
use crate::lattice::{Cocycle, DualVector, Lattice, LatticeVector};
use crate::{Error, Rat};

#[derive(Clone, Debug)]
pub struct FockSector {
    pub lattice: Lattice,
    pub cocycle: Cocycle,
    pub mu: DualVector,
    pub twisted: bool,
    pub e_max: Rat,
    pub charge_window: Option<Vec<LatticeVector>>,
}

impl FockSector {
    pub fn ns(lattice: Lattice, cocycle: Cocycle, mu: DualVector, e_max: Rat) -> Self {
        FockSector { lattice, cocycle, mu, twisted: false, e_max, charge_window: None }
    }

    pub fn twisted(lattice: Lattice, cocycle: Cocycle, mu: DualVector, e_max: Rat) -> Self {
        FockSector { lattice, cocycle, mu, twisted: true, e_max, charge_window: None }
    }

    pub fn with_window(mut self, window: Vec<LatticeVector>) -> Self {
        self.charge_window = Some(window);
        self
    }

    pub fn engine(&self) -> VertexEngine<'_> {
        VertexEngine::with_coset(&self.lattice, &self.cocycle, self.mu.clone())
    }

    /// Central charge `3r/2`.
    pub fn central_charge(&self) -> Rat {
        Rat::new(3 * self.lattice.rank() as i64, 2)
    }
}

/// An ordered basis of a truncated sector.
#[derive(Clone, Debug)]
pub struct FockBasis {
    pub states: Vec<Monomial>,
    pub energies: Vec<Rat>,
    index: BTreeMap<Monomial, usize>,
    charges: BTreeSet<Vec<Rat>>,
}

impl FockBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains_charge(&self, c: &[Rat]) -> bool {
        self.charges.contains(c)
    }

    /// Dimension of each energy level.
    pub fn graded_dims(&self) -> BTreeMap<Rat, usize> {
        let mut out = BTreeMap::new();
        for e in &self.energies {
            *out.entry(*e).or_insert(0) += 1;
        }
        out
    }

    /// Write a state in this basis; components outside the truncation are dropped.
    pub fn coords(&self, v: &State) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (m, c) in v.iter() {
            if let Some(i) = self.index_of(m) {
                out.insert(i, c.clone());
            }
        }
        out
    }

    pub fn state_of(&self, col: &BTreeMap<usize, Scalar>) -> State {
        let mut s = State::zero();
        for (i, c) in col {
            s.add_term(self.states[*i].clone(), c.clone());
        }
        s
    }
}

fn charges(sec: &FockSector, budget: Rat) -> Result<Vec<Vec<Rat>>, Error> {
    let lat = &sec.lattice;
    let r = lat.rank();
    let mut out = Vec::new();
    let admissible = |g: &Vec<Rat>| lat.pair(g, g) / Rat::from(2) <= budget;
    match &sec.charge_window {
        Some(window) => {
            for q in window {
                if q.len() != r {
                    return Err(Error::RankMismatch { expected: r, got: q.len() });
                }
                let g: Vec<Rat> = sec.mu.iter().zip(q).map(|(m, x)| m + Rat::from(*x)).collect();
                if admissible(&g) && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        None => out = crate::lattice::coset_points(lat, &sec.mu, budget)?,
    }
    Ok(out)
}

type Modes = Vec<(u32, usize)>;

fn fermion_sets(slots: &[((u32, usize), Rat)], start: usize, budget: Rat, cur: &mut Modes, out: &mut Vec<(Modes, Rat)>, used: Rat) {
    out.push((cur.clone(), used));
    for s in start..slots.len() {
        let (slot, e) = slots[s];
        if used + e <= budget {
            cur.push(slot);
            fermion_sets(slots, s + 1, budget, cur, out, used + e);
            cur.pop();
        }
    }
}

fn boson_multisets(slots: &[(u32, usize)], start: usize, budget: i64, cur: &mut Modes, out: &mut Vec<(Modes, i64)>, used: i64) {
    out.push((cur.clone(), used));
    for s in start..slots.len() {
        let (n, i) = slots[s];
        if used + n as i64 <= budget {
            cur.push((n, i));
            boson_multisets(slots, s, budget, cur, out, used + n as i64);
            cur.pop();
        }
    }
}

/// All basis monomials of energy `≤ e_max`, ordered by energy, charge and modes.
pub fn enumerate_basis(sec: &FockSector) -> Result<FockBasis, Error> {
    let lat = &sec.lattice;
    let r = lat.rank();
    if sec.mu.len() != r {
        return Err(Error::RankMismatch { expected: r, got: sec.mu.len() });
    }
    if !lat.is_dual(&sec.mu) {
        return Err(Error::Invalid(String::from("coset representative is not in the dual lattice")));
    }
    let shift = if sec.twisted { Rat::new(r as i64, 16) } else { Rat::zero() };
    let top = sec.e_max - shift;
    let mut entries: Vec<(Rat, Monomial)> = Vec::new();
    for g in charges(sec, top)? {
        let lattice_e = lat.pair(&g, &g) / Rat::from(2);
        let budget = top - lattice_e;
        if budget < Rat::zero() {
            continue;
        }
        let half = if sec.twisted { Rat::zero() } else { Rat::new(1, 2) };
        let mut fslots = Vec::new();
        let mut k = 0u32;
        while Rat::from(k as i64) + half <= budget {
            for i in 0..r {
                fslots.push(((k, i), Rat::from(k as i64) + half));
            }
            k += 1;
        }
        let mut fsets = Vec::new();
        fermion_sets(&fslots, 0, budget, &mut Vec::new(), &mut fsets, Rat::zero());
        let bmax = budget.floor().to_integer();
        let bslots: Vec<(u32, usize)> = (1..=bmax.max(0) as u32).flat_map(|n| (0..r).map(move |i| (n, i))).collect();
        let mut bsets = Vec::new();
        boson_multisets(&bslots, 0, bmax, &mut Vec::new(), &mut bsets, 0);
        for (fs, fe) in &fsets {
            for (bs, be) in &bsets {
                let osc = *fe + Rat::from(*be);
                if osc <= budget {
                    let m = Monomial { fermions: fs.clone(), bosons: bs.clone(), charge: g.clone() };
                    entries.push((osc + lattice_e + shift, m));
                }
            }
        }
    }
    entries.sort_by(|(e1, m1), (e2, m2)| {
        (e1, &m1.charge, &m1.fermions, &m1.bosons).cmp(&(e2, &m2.charge, &m2.fermions, &m2.bosons))
    });
    let mut index = BTreeMap::new();
    let mut cs = BTreeSet::new();
    for (i, (_, m)) in entries.iter().enumerate() {
        index.insert(m.clone(), i);
        cs.insert(m.charge.clone());
    }
    let (energies, states) = entries.into_iter().unzip();
    Ok(FockBasis { states, energies, index, charges: cs })
}

/// Where a mode matrix comes from: `x_(n)` with `x = a` for `N = 1` and `x = Sa` for `N = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSource {
    pub field: State,
    pub odd: bool,
    pub n: i64,
    pub big_n: u8,
}

impl ModeSource {
    pub fn component(&self) -> State {
        if self.big_n == 1 {
            self.field.clone()
        } else {
            s_state(&self.field)
        }
    }

    pub fn component_odd(&self) -> bool {
        self.odd ^ (self.big_n == 0)
    }
}

/// A sparse exact matrix over a sector basis, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeMatrix {
    pub dim: usize,
    pub cols: Vec<BTreeMap<usize, Scalar>>,
    pub charge_shift: Vec<Rat>,
    pub energy_shift: Rat,
    pub odd: bool,
    pub source: Option<ModeSource>,
}

impl ModeMatrix {
    pub fn zero(dim: usize, rank: usize) -> Self {
        ModeMatrix {
            dim,
            cols: vec![BTreeMap::new(); dim],
            charge_shift: vec![Rat::zero(); rank],
            energy_shift: Rat::zero(),
            odd: false,
            source: None,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.cols[col].get(&row).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coordinate triplets `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out.push((*r, c, v.clone()));
            }
        }
        out
    }

    pub fn apply(&self, v: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in v {
            for (r, y) in &self.cols[*c] {
                let e = out.entry(*r).or_insert_with(Scalar::zero);
                *e += &(x * y);
            }
        }
        out.retain(|_, s| !s.is_zero());
        out
    }

    /// `c · self`.
    pub fn scaled(mut self, c: &Scalar) -> ModeMatrix {
        for col in self.cols.iter_mut() {
            for v in col.values_mut() {
                *v = &*v * c;
            }
            col.retain(|_, v| !v.is_zero());
        }
        self
    }

    /// `self · other`.
    pub fn compose(&self, other: &ModeMatrix) -> ModeMatrix {
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        ModeMatrix {
            dim: self.dim,
            cols,
            charge_shift: self.charge_shift.iter().zip(&other.charge_shift).map(|(a, b)| a + b).collect(),
            energy_shift: self.energy_shift + other.energy_shift,
            odd: self.odd ^ other.odd,
            source: None,
        }
    }

    /// Every non-zero entry joins states whose energy and charge differ by the declared shifts.
    pub fn respects_grading(&self, basis: &FockBasis) -> bool {
        self.cols.iter().enumerate().all(|(c, col)| {
            col.keys().all(|&r| {
                basis.energies[r] == basis.energies[c] + self.energy_shift
                    && basis.states[r]
                        .charge
                        .iter()
                        .zip(&basis.states[c].charge)
                        .zip(&self.charge_shift)
                        .all(|((a, b), s)| *a == b + s)
            })
        })
    }
}

fn homogeneous_data(lat: &Lattice, x: &State) -> Result<(Rat, Vec<Rat>), Error> {
    let mut it = x.iter();
    let Some((m, _)) = it.next() else {
        return Ok((Rat::zero(), vec![Rat::zero(); lat.rank()]));
    };
    let e = m.energy(lat, false);
    for (m2, _) in it {
        if m2.energy(lat, false) != e || m2.charge != m.charge {
            return Err(Error::Invalid(String::from("field is not homogeneous")));
        }
    }
    Ok((e, m.charge.clone()))
}

/// Matrix of the mode `(n|N)` of the superfield with state `field`.
pub fn field_mode_matrix(
    sec: &FockSector,
    basis: &FockBasis,
    field: &State,
    odd: bool,
    n: i64,
    big_n: u8,
) -> Result<ModeMatrix, Error> {
    if sec.twisted {
        return Err(Error::Unsupported(String::from("vertex operators on twisted sectors")));
    }
    let src = ModeSource { field: field.clone(), odd, n, big_n };
    let x = src.component();
    let (e, charge) = homogeneous_data(&sec.lattice, &x)?;
    let eng = sec.engine();
    let cols = basis
        .states
        .iter()
        .map(|m| basis.coords(&eng.n_product(&x, n, &State::basis(m.clone()))))
        .collect();
    Ok(ModeMatrix {
        dim: basis.len(),
        cols,
        charge_shift: charge,
        energy_shift: e - Rat::from(n + 1),
        odd: src.component_odd(),
        source: Some(src),
    })
}

/// The state `ψ^h_{−1/2}|0⟩` of the odd generator attached to `h ∈ W`.
pub fn cartan_state(rank: usize, h: &[Rat]) -> State {
    let mut s = State::zero();
    for (i, c) in h.iter().enumerate() {
        if !c.is_zero() {
            let (sg, m) = Monomial::vacuum(rank).create_fermion(0, i).expect("empty");
            s.add_term(m, Scalar::from_ratio64(*c) * Scalar::int(sg as i64));
        }
    }
    s
}

pub fn heisenberg_mode(sec: &FockSector, basis: &FockBasis, h: &[Rat], n: i64, big_n: u8) -> Result<ModeMatrix, Error> {
    let r = sec.lattice.rank();
    if h.len() != r {
        return Err(Error::RankMismatch { expected: r, got: h.len() });
    }
    field_mode_matrix(sec, basis, &cartan_state(r, h), true, n, big_n)
}

pub fn gamma_vertex_matrix(sec: &FockSector, basis: &FockBasis, alpha: &[i64], n: i64, big_n: u8) -> Result<ModeMatrix, Error> {
    let r = sec.lattice.rank();
    if alpha.len() != r {
        return Err(Error::RankMismatch { expected: r, got: alpha.len() });
    }
    let field = State::basis(Monomial::exp(alpha.iter().map(|&x| Rat::from(x)).collect()));
    let odd = sec.lattice.pair_int(alpha, alpha).rem_euclid(2) == 1;
    field_mode_matrix(sec, basis, &field, odd, n, big_n)
}

/// Ordinary products `x_(j) y / j!` of the components of two superfields, read off
/// from `[a_Λ b]`; the result maps `j` to a state.
pub fn component_bracket(
    expected: &BTreeMap<LambdaMonomial, State>,
    a_odd: bool,
    big_m: u8,
    big_n: u8,
) -> BTreeMap<u32, State> {
    let mut b0: BTreeMap<u32, State> = BTreeMap::new();
    let mut b1: BTreeMap<u32, State> = BTreeMap::new();
    for (m, s) in expected {
        let t = if m.chi == 0 { &mut b0 } else { &mut b1 };
        t.insert(m.j, s.clone());
    }
    let pa = if a_odd { Scalar::int(-1) } else { Scalar::one() };
    let mut out: BTreeMap<u32, State> = BTreeMap::new();
    let mut add = |j: u32, s: &State, c: &Scalar| {
        let e = out.entry(j).or_default();
        e.add_state(s, c);
    };
    match (big_m, big_n) {
        (1, 1) => b1.iter().for_each(|(j, s)| add(*j, s, &Scalar::one())),
        (0, 1) => b0.iter().for_each(|(j, s)| add(*j, s, &Scalar::one())),
        (1, _) => {
            b1.iter().for_each(|(j, s)| add(*j, &s_state(s), &pa));
            b0.iter().for_each(|(j, s)| add(*j, s, &-&pa));
        }
        _ => {
            b0.iter().for_each(|(j, s)| add(*j, &s_state(s), &-&pa));
            b1.iter().for_each(|(j, s)| add(*j + 1, s, &-&pa));
        }
    }
    out.retain(|_, s| !s.is_zero());
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorReport {
    pub interior_columns: usize,
    pub mismatches: Vec<(usize, String)>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.interior_columns > 0
    }
}

fn shifted_ok(basis: &FockBasis, sec: &FockSector, c: usize, e: Rat, q: &[Rat]) -> bool {
    let charge: Vec<Rat> = basis.states[c].charge.iter().zip(q).map(|(a, b)| a + b).collect();
    basis.energies[c] + e <= sec.e_max && basis.contains_charge(&charge)
}

fn binom_i(m: i64, j: u32) -> Scalar {
    Scalar::from_bigint(binom(m, j))
}

/// Compare `[A, B]` with the mode expansion `Σ_j C(m,j) (x_(j)y)_(m+n−j)` of the expected bracket.
pub fn commutator_check(
    sec: &FockSector,
    basis: &FockBasis,
    a: &ModeMatrix,
    b: &ModeMatrix,
    expected: &BTreeMap<LambdaMonomial, State>,
) -> Result<CommutatorReport, Error> {
    let (Some(sa), Some(sb)) = (&a.source, &b.source) else {
        return Err(Error::Invalid(String::from("mode matrices without a field source")));
    };
    if a.dim != basis.len() || b.dim != basis.len() {
        return Err(Error::RankMismatch { expected: basis.len(), got: a.dim.min(b.dim) });
    }
    let comps = component_bracket(expected, sa.odd, sa.big_n, sb.big_n);
    let eng = sec.engine();
    let sign = if a.odd && b.odd { Scalar::one() } else { Scalar::int(-1) };
    let qab: Vec<Rat> = a.charge_shift.iter().zip(&b.charge_shift).map(|(x, y)| x + y).collect();
    let mut report = CommutatorReport { interior_columns: 0, mismatches: Vec::new() };
    for c in 0..basis.len() {
        if !(shifted_ok(basis, sec, c, a.energy_shift, &a.charge_shift)
            && shifted_ok(basis, sec, c, b.energy_shift, &b.charge_shift)
            && shifted_ok(basis, sec, c, a.energy_shift + b.energy_shift, &qab))
        {
            continue;
        }
        report.interior_columns += 1;
        let e_c: BTreeMap<usize, Scalar> = [(c, Scalar::one())].into_iter().collect();
        let ab = a.apply(&b.apply(&e_c));
        let ba = b.apply(&a.apply(&e_c));
        let lhs_state = &basis.state_of(&ab) + &basis.state_of(&ba).scale(&sign);
        let v = State::basis(basis.states[c].clone());
        let mut rhs = State::zero();
        for (j, st) in &comps {
            let coeff = binom_i(sa.n, *j) * Scalar::from_bigint(factorial(*j));
            let w = eng.n_product(st, sa.n + sb.n - *j as i64, &v);
            rhs.add_state(&w, &coeff);
        }
        if lhs_state != rhs {
            report.mismatches.push((c, format!("lhs {} rhs {}", lhs_state, rhs)));
        }
    }
    Ok(report)
}

/// `L0` (diagonal), `S¹ = G_(0|1)` and, given the state of `J`, `S² = √−1 J_(0|0)`.
pub fn l0_and_susy_operators(
    sec: &FockSector,
    basis: &FockBasis,
    j_field: Option<&State>,
) -> Result<(ModeMatrix, Option<ModeMatrix>, Option<ModeMatrix>), Error> {
    let r = sec.lattice.rank();
    let mut l0 = ModeMatrix::zero(basis.len(), r);
    for (i, e) in basis.energies.iter().enumerate() {
        if !e.is_zero() {
            l0.cols[i].insert(i, Scalar::from_ratio64(*e));
        }
    }
    if sec.twisted {
        return Ok((l0, None, None));
    }
    let g = neveu_schwarz_state(&sec.lattice);
    let s1 = field_mode_matrix(sec, basis, &g, true, 0, 1)?;
    let s2 = match j_field {
        Some(j) => Some(field_mode_matrix(sec, basis, j, false, 0, 0)?.scaled(&Scalar::i())),
        None => None,
    };
    Ok((l0, Some(s1), s2))
}

/// The state of `G = Σ_i :(Sα_i) α^i:`.
pub fn neveu_schwarz_state(lat: &Lattice) -> State {
    let r = lat.rank();
    let inv = lat.gram_inverse();
    let mut s = State::zero();
    for i in 0..r {
        let boson = Monomial::vacuum(r).create_boson(1, i);
        for (k, row) in inv.iter().enumerate() {
            if !row[i].is_zero() {
                let (sg, m) = boson.create_fermion(0, k).expect("empty");
                s.add_term(m, Scalar::from_ratio64(row[i]) * Scalar::int(sg as i64));
            }
        }
    }
    s
}

/// Matrix of the translation operator `T` on the sector.
pub fn translation_matrix(sec: &FockSector, basis: &FockBasis) -> ModeMatrix {
    let mut m = ModeMatrix::zero(basis.len(), sec.lattice.rank());
    m.energy_shift = Rat::one();
    m.cols = basis.states.iter().map(|s| basis.coords(&t_state(&State::basis(s.clone())))).collect();
    m
}

/// Checks `[S^i, S^j] = 2δ_ij T` on the interior for the supplied odd operators.
pub fn susy_pair_check(sec: &FockSector, basis: &FockBasis, ops: &[&ModeMatrix]) -> bool {
    let t = translation_matrix(sec, basis);
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            for c in 0..basis.len() {
                if basis.energies[c] + Rat::one() > sec.e_max {
                    continue;
                }
                let e_c: BTreeMap<usize, Scalar> = [(c, Scalar::one())].into_iter().collect();
                let mut lhs = a.apply(&b.apply(&e_c));
                for (k, v) in b.apply(&a.apply(&e_c)) {
                    let e = lhs.entry(k).or_insert_with(Scalar::zero);
                    *e += &v;
                }
                lhs.retain(|_, s| !s.is_zero());
                let mut rhs = BTreeMap::new();
                if i == j {
                    for (k, v) in &t.cols[c] {
                        rhs.insert(*k, v * &Scalar::int(2));
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Joint eigenspaces of the zero modes `(Sα_i)_(0)` are the charge-homogeneous subspaces.
pub fn charge_separation_check(sec: &FockSector, basis: &FockBasis) -> Result<bool, Error> {
    let r = sec.lattice.rank();
    let mut signature: BTreeMap<Vec<Rat>, Vec<Rat>> = BTreeMap::new();
    let mut eig: Vec<Vec<Rat>> = vec![Vec::new(); basis.len()];
    for i in 0..r {
        let mut h = vec![Rat::zero(); r];
        h[i] = Rat::one();
        let m = heisenberg_mode(sec, basis, &h, 0, 0)?;
        for (c, col) in m.cols.iter().enumerate() {
            let expected = sec.lattice.pair_basis(i, &basis.states[c].charge);
            let diag_only = col.keys().all(|&k| k == c);
            if !diag_only || m.entry(c, c) != Scalar::from_ratio64(expected) {
                return Ok(false);
            }
            eig[c].push(expected);
        }
    }
    for (c, e) in eig.into_iter().enumerate() {
        let ch = basis.states[c].charge.clone();
        match signature.get(&e) {
            Some(prev) if *prev != ch => return Ok(false),
            _ => {
                signature.insert(e, ch);
            }
        }
    }
    Ok(true)
}

/// `Σ (±1) q^{E − c/24}` over the enumerated basis; the sign is `(−1)^{#fermions}` when `super_trace`.
pub fn character_from_basis(sec: &FockSector, basis: &FockBasis, super_trace: bool) -> QSeries {
    let shift = Rat::new(sec.lattice.rank() as i64, 16);
    let mut q = QSeries::zero();
    for (m, e) in basis.states.iter().zip(&basis.energies) {
        let sign = if super_trace && m.fermion_count() % 2 == 1 { -1 } else { 1 };
        q.add_term(*e - shift, Scalar::int(sign));
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_cocycle;

    fn sector(g: i64, mu: Rat, e: Rat, twisted: bool) -> FockSector {
        let l = Lattice::new(vec![vec![g]]).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        FockSector { lattice: l, cocycle: c, mu: vec![mu], twisted, e_max: e, charge_window: None }
    }

    #[test]
    fn graded_dimensions() {
        let b = enumerate_basis(&sector(2, Rat::zero(), Rat::one(), false)).unwrap();
        let d: Vec<(Rat, usize)> = b.graded_dims().into_iter().collect();
        assert_eq!(d, vec![(Rat::zero(), 1), (Rat::new(1, 2), 1), (Rat::one(), 3)]);
        let t = enumerate_basis(&sector(2, Rat::zero(), Rat::new(1, 16), true)).unwrap();
        assert_eq!(t.len(), 2);
        let h = enumerate_basis(&sector(2, Rat::new(1, 2), Rat::new(1, 4), false)).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn indefinite_needs_window() {
        let l = Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let s = FockSector::ns(l, c, vec![Rat::zero(); 2], Rat::one());
        assert_eq!(enumerate_basis(&s).unwrap_err(), Error::NeedsChargeWindow);
        let s = s.with_window(vec![vec![0, 0], vec![1, 0]]);
        assert!(enumerate_basis(&s).is_ok());
    }

    #[test]
    fn s_is_g_zero_mode_and_squares_to_t() {
        let sec = sector(2, Rat::zero(), Rat::new(5, 2), false);
        let b = enumerate_basis(&sec).unwrap();
        let (l0, s1, _) = l0_and_susy_operators(&sec, &b, None).unwrap();
        let s1 = s1.unwrap();
        for (c, m) in b.states.iter().enumerate() {
            if b.energies[c] + Rat::new(1, 2) <= sec.e_max {
                assert_eq!(b.state_of(&s1.cols[c]), s_state(&State::basis(m.clone())));
            }
        }
        assert!(susy_pair_check(&sec, &b, &[&s1]));
        assert!(l0.respects_grading(&b) && s1.respects_grading(&b));
        assert!(charge_separation_check(&sec, &b).unwrap());
    }

    #[test]
    fn gamma_mode_commutators_match_bracket() {
        for g in [1, 2] {
            let sec = sector(g, Rat::zero(), Rat::new(5, 2), false);
            let b = enumerate_basis(&sec).unwrap();
            let eng = sec.engine();
            let ep = State::basis(Monomial::exp(vec![Rat::one()]));
            let em = State::basis(Monomial::exp(vec![-Rat::one()]));
            let expected = eng.lambda_bracket(&ep, &em);
            for (m, bm) in [(0, 1), (1, 0), (-1, 1), (0, 0)] {
                for (n, bn) in [(0, 1), (-1, 0), (1, 1), (0, 0)] {
                    let a = gamma_vertex_matrix(&sec, &b, &[1], m, bm).unwrap();
                    let c = gamma_vertex_matrix(&sec, &b, &[-1], n, bn).unwrap();
                    let rep = commutator_check(&sec, &b, &a, &c, &expected).unwrap();
                    assert!(rep.passed(), "g={} ({}|{}) ({}|{}): {:?}", g, m, bm, n, bn, rep.mismatches.first());
                }
            }
        }
    }
}
