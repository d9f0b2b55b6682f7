//! Integral lattices `Q = Z^r` with a Gram matrix, their discriminant groups and
//! bimultiplicative sign cocycles.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::{Error, Rat};

/// A point of `Q`, in coordinates of the basis `α_1, …, α_r`.
pub type LatticeVector = Vec<i64>;
/// A point of `Q* ⊂ Q ⊗ ℚ`, in the same coordinates.
pub type DualVector = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    even: bool,
    det: i64,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, Error> {
        let r = gram.len();
        if r == 0 || gram.iter().any(|row| row.len() != r) {
            return Err(Error::NotSquare);
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NonSymmetric(i, j));
                }
            }
        }
        let det = bareiss_det(&gram);
        if det == 0 {
            return Err(Error::Degenerate);
        }
        let even = (0..r).all(|i| gram[i][i] % 2 == 0);
        Ok(Lattice { gram, even, det })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn g(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// Positive definiteness by Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let minor: Vec<Vec<i64>> = self.gram[..k].iter().map(|row| row[..k].to_vec()).collect();
            bareiss_det(&minor) > 0
        })
    }

    fn check(&self, n: usize) -> Result<(), Error> {
        if n != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: n });
        }
        Ok(())
    }

    pub fn pairing_int(&self, x: &[i64], y: &[i64]) -> Result<i64, Error> {
        self.check(x.len())?;
        self.check(y.len())?;
        Ok(self.pair_int(x, y))
    }

    pub(crate) fn pair_int(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    /// `xᵀ·gram·y` for rational coordinate vectors.
    pub fn pairing(&self, x: &[Rat], y: &[Rat]) -> Result<Rat, Error> {
        self.check(x.len())?;
        self.check(y.len())?;
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    s += xi * Rat::from(self.gram[i][j]) * yj;
                }
            }
        }
        s
    }

    /// `(α_i, y)` for a basis vector `α_i`.
    pub(crate) fn pair_basis(&self, i: usize, y: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (j, yj) in y.iter().enumerate() {
            s += Rat::from(self.gram[i][j]) * yj;
        }
        s
    }

    /// The inverse Gram matrix; column `i` holds the coordinates of the dual basis vector `α^i`.
    pub fn gram_inverse(&self) -> Vec<Vec<Rat>> {
        let r = self.rank();
        let mut a: Vec<Vec<Rat>> = self
            .gram
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v: Vec<Rat> = row.iter().map(|&x| Rat::from(x)).collect();
                v.extend((0..r).map(|j| if i == j { Rat::from(1) } else { Rat::zero() }));
                v
            })
            .collect();
        for c in 0..r {
            let p = (c..r).find(|&k| !a[k][c].is_zero()).expect("non-degenerate");
            a.swap(c, p);
            let piv = a[c][c];
            for x in a[c].iter_mut() {
                *x /= piv;
            }
            for k in 0..r {
                if k != c && !a[k][c].is_zero() {
                    let f = a[k][c];
                    let row_c = a[c].clone();
                    for (x, y) in a[k].iter_mut().zip(row_c) {
                        *x -= f * y;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[r..].to_vec()).collect()
    }

    /// Coordinates of the dual basis vector `α^i`, characterised by `(α_j, α^i) = δ_ij`.
    pub fn dual_basis_vector(&self, i: usize) -> DualVector {
        let inv = self.gram_inverse();
        (0..self.rank()).map(|k| inv[k][i]).collect()
    }

    /// Whether a rational vector pairs integrally with all of `Q`.
    pub fn is_dual(&self, mu: &[Rat]) -> bool {
        mu.len() == self.rank() && (0..self.rank()).all(|i| self.pair_basis(i, mu).is_integer())
    }
}

/// Fraction-free determinant.
pub fn bareiss_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Smith normal form `U·M·V = D` with unimodular `U`, `V` and `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub diag: Vec<i64>,
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        loop {
            // pivot: smallest non-zero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                if q != 0 {
                    row_axpy(&mut a, i, t, -q);
                    row_axpy(&mut u, i, t, -q);
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                if q != 0 {
                    col_axpy(&mut a, j, t, -q);
                    col_axpy(&mut v, j, t, -q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, 1);
                    row_axpy(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    SmithForm { u, v, diag }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn row_axpy(a: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(s) {
        *x += k * y;
    }
}

fn col_axpy(a: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    for row in a.iter_mut() {
        row[dst] += k * row[src];
    }
}

/// Inverse of a unimodular integer matrix, by exact rational elimination.
fn unimodular_inverse(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = Lattice { gram: m.to_vec(), even: false, det: 1 };
    l.gram_inverse()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.to_integer()).collect())
        .collect()
}

/// `Q*/Q` with one representative per class, each coordinate reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantGroup {
    pub coset_reps: Vec<DualVector>,
    pub invariants: Vec<i64>,
    pub order: usize,
}

impl DiscriminantGroup {
    /// Index of the representative congruent to `mu` modulo `Q`.
    pub fn class_of(&self, mu: &[Rat]) -> Option<usize> {
        let red = reduce_mod_lattice(mu);
        self.coset_reps.iter().position(|r| *r == red)
    }
}

pub fn reduce_mod_lattice(mu: &[Rat]) -> DualVector {
    mu.iter().map(|x| x - x.floor()).collect()
}

pub fn discriminant_group(l: &Lattice) -> DiscriminantGroup {
    let snf = smith_normal_form(l.gram());
    let uinv = unimodular_inverse(&snf.u);
    let inv = l.gram_inverse();
    let r = l.rank();
    let mut reps: Vec<DualVector> = vec![vec![Rat::zero(); r]];
    for (t, &d) in snf.diag.iter().enumerate() {
        if d == 1 {
            continue;
        }
        let mut next = Vec::new();
        for base in &reps {
            for k in 0..d {
                // x = U^{-1} e_t · k, μ = gram^{-1} x
                let mut mu = base.clone();
                for i in 0..r {
                    let mut s = Rat::zero();
                    for j in 0..r {
                        s += inv[i][j] * Rat::from(uinv[j][t] * k);
                    }
                    mu[i] += s;
                }
                next.push(reduce_mod_lattice(&mu));
            }
        }
        reps = next;
    }
    reps.sort();
    let order = reps.len();
    DiscriminantGroup { coset_reps: reps, invariants: snf.diag, order }
}

/// Sign cocycle `ε: Q × Q → {±1}`, bimultiplicative, given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    basis_signs: Vec<Vec<i8>>,
}

impl Cocycle {
    pub fn basis_signs(&self) -> &[Vec<i8>] {
        &self.basis_signs
    }

    pub fn basis(&self, i: usize, j: usize) -> i8 {
        self.basis_signs[i][j]
    }

    /// `ε(α, β)` for integral vectors.
    pub fn epsilon(&self, a: &[i64], b: &[i64]) -> i8 {
        let mut odd = 0i64;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if self.basis_signs[i][j] < 0 {
                    odd += ai * bj;
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `ε(α, β)` for `β` with integer coordinates stored as rationals.
    pub fn epsilon_rat(&self, a: &[i64], b: &[Rat]) -> i8 {
        let bi: Vec<i64> = b
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "cocycle evaluated off the lattice");
                x.to_integer()
            })
            .collect();
        self.epsilon(a, &bi)
    }
}

/// Locality sign `(−1)^{(α,β) + (α,α)(β,β)}` that `ε(α,β)/ε(β,α)` must equal.
pub fn locality_sign(l: &Lattice, a: &[i64], b: &[i64]) -> i8 {
    let e = l.pair_int(a, b) + l.pair_int(a, a) * l.pair_int(b, b);
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn build_cocycle(l: &Lattice, overrides: Option<Vec<Vec<i8>>>) -> Result<Cocycle, Error> {
    let r = l.rank();
    let signs = match overrides {
        Some(s) => {
            if s.len() != r || s.iter().any(|row| row.len() != r) {
                return Err(Error::RankMismatch { expected: r, got: s.len() });
            }
            for (i, row) in s.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if x != 1 && x != -1 {
                        return Err(Error::Cocycle { condition: "values in {±1}", i, j });
                    }
                }
            }
            s
        }
        None => (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i <= j {
                            1
                        } else {
                            let e = l.g(i, j) + l.g(i, i) * l.g(j, j);
                            if e.rem_euclid(2) == 0 {
                                1
                            } else {
                                -1
                            }
                        }
                    })
                    .collect()
            })
            .collect(),
    };
    let c = Cocycle { basis_signs: signs };
    for i in 0..r {
        for j in 0..r {
            let (ei, ej) = (unit(r, i), unit(r, j));
            if c.epsilon(&ei, &ej) != locality_sign(l, &ei, &ej) * c.epsilon(&ej, &ei) {
                return Err(Error::Cocycle { condition: "locality", i, j });
            }
        }
    }
    Ok(c)
}

/// All `γ ∈ μ + Q` with `(γ,γ)/2 ≤ bound`, for a positive-definite lattice.
pub fn coset_points(l: &Lattice, mu: &[Rat], bound: Rat) -> Result<Vec<DualVector>, Error> {
    let r = l.rank();
    if mu.len() != r {
        return Err(Error::RankMismatch { expected: r, got: mu.len() });
    }
    if !l.is_positive_definite() {
        return Err(Error::NeedsChargeWindow);
    }
    let mut out = Vec::new();
    if bound < Rat::zero() {
        return Ok(out);
    }
    let inv = l.gram_inverse();
    let to_f = |x: &Rat| *x.numer() as f64 / *x.denom() as f64;
    let b = 2.0 * to_f(&bound);
    let ranges: Vec<(i64, i64)> = (0..r)
        .map(|i| {
            let w = libm::sqrt(b * to_f(&inv[i][i])) + 1.0;
            let m = to_f(&mu[i]);
            (libm::floor(-m - w) as i64, libm::ceil(-m + w) as i64)
        })
        .collect();
    let mut q = vec![0i64; r];
    points_rec(l, 0, &mut q, &ranges, mu, bound, &mut out);
    Ok(out)
}

fn points_rec(l: &Lattice, i: usize, q: &mut Vec<i64>, ranges: &[(i64, i64)], mu: &[Rat], bound: Rat, out: &mut Vec<DualVector>) {
    if i == q.len() {
        let g: DualVector = mu.iter().zip(q.iter()).map(|(m, x)| m + Rat::from(*x)).collect();
        if l.pair(&g, &g) / Rat::from(2) <= bound {
            out.push(g);
        }
        return;
    }
    for x in ranges[i].0..=ranges[i].1 {
        q[i] = x;
        points_rec(l, i + 1, q, ranges, mu, bound, out);
    }
}

pub fn unit(r: usize, i: usize) -> LatticeVector {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

pub fn to_rat(v: &[i64]) -> DualVector {
    v.iter().map(|&x| Rat::from(x)).collect()
}

/// Human-readable summary used by the command-line tool.
pub fn describe(l: &Lattice) -> alloc::string::String {
    let d = discriminant_group(l);
    format!(
        "rank {} det {} even {} positive-definite {} |Q*/Q| {}",
        l.rank(),
        l.det(),
        l.is_even(),
        l.is_positive_definite(),
        d.order
    )
}

impl core::fmt::Display for Lattice {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:?}", self.gram)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Lattice::new(vec![vec![1, 2], vec![3, 4]]), Err(Error::NonSymmetric(1, 0)));
        assert_eq!(Lattice::new(vec![vec![1, 1], vec![1, 1]]), Err(Error::Degenerate));
        let h = Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(h.det(), -1);
        assert!(h.is_even());
        assert!(!Lattice::new(vec![vec![1]]).unwrap().is_even());
    }

    #[test]
    fn smith_reconstructs() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&m);
        let d = mat_mul(&mat_mul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn dual_pairing() {
        let l = Lattice::new(vec![vec![2]]).unwrap();
        assert_eq!(l.pairing(&to_rat(&[1]), &[Rat::new(1, 2)]).unwrap(), Rat::from(1));
        assert!(l.pairing_int(&[1, 0], &[1]).is_err());
    }
}
