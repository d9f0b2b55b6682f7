//! Exact computer algebra for `N_K=1` SUSY lattice vertex algebras.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is off.
//!
//! * [`exactnum`]: Gaussian rationals and the `(λ, χ)` coefficient ring.
//! * [`lattice`]: integral lattices, discriminant groups and sign cocycles.
//! * [`fock`]: Fock-space states, the free-field vertex operator engine, truncated
//!   sectors and exact mode matrices.
//! * [`opecalc`]: superfield expressions, the `Λ`-bracket calculus, ordinary
//!   component brackets and the conformal structures built on them.
//! * [`charmod`]: q-series characters and numerical modular checks.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod charmod;
pub mod exactnum;
pub mod fock;
pub mod lattice;
pub mod opecalc;

use alloc::string::String;

pub use exactnum::{LambdaMonomial, LambdaPoly, Scalar};
pub use lattice::{Cocycle, Lattice};

/// Rational numbers with machine-size parts, used for charges, energies and exponents.
pub type Rat = num_rational::Ratio<i64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("gram matrix is degenerate (det = 0)")]
    Degenerate,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("cocycle violates {condition} at basis pair ({i}, {j})")]
    Cocycle { condition: &'static str, i: usize, j: usize },
    #[error("Gamma-Gamma bracket with pairing {0} is outside the symbolic rules; use the oracle")]
    Delegate(i64),
    #[error("pairing {0} is non-negative, the bracket vanishes")]
    NonNegativePairing(i64),
    #[error("undeclared generator pair ({0}, {1})")]
    UndeclaredPair(String, String),
    #[error("inadmissible operator: {0}")]
    Inadmissible(String),
    #[error("indefinite lattice requires an explicit charge window")]
    NeedsChargeWindow,
    #[error("lattice must be even and positive definite: {0}")]
    NotPositiveEven(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("non-convergent evaluation: {0}")]
    NonConvergent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
