//! Truncated Fock-space realization of the lattice SUSY vertex algebra and its modules.

pub mod sector;
pub mod space;
pub mod vertex;

pub use sector::{
    character_from_basis, commutator_check, enumerate_basis, gamma_vertex_matrix, heisenberg_mode,
    l0_and_susy_operators, CommutatorReport, FockSector, ModeMatrix,
};
pub use space::{Monomial, State};
pub use vertex::VertexEngine;
