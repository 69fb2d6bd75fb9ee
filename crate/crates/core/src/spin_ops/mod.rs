//! Basis bookkeeping, the static chain Hamiltonian and the global kick.

mod basis;
mod chain;
pub mod dense;
mod hamiltonian;
mod kick;

pub use basis::{binomial, build_basis, BasisIndexing, Sector, MAX_SITES, MIN_SITES};
pub use chain::{Boundary, ChainParams, DisorderRealization};
pub use hamiltonian::{build_hamiltonian, SectorMatrix};
pub use kick::{apply_kick, apply_kick_in_place};
