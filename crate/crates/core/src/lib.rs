//! Simulation core for periodically kicked, disordered spin-1/2 chains with
//! nearest and next-nearest neighbour Heisenberg exchange and a z-axis
//! Dzyaloshinskii-Moriya term.
//!
//! The crate is organised bottom-up:
//!
//! * [`spin_ops`]: basis bookkeeping by total-S_z sector, the static
//!   Hamiltonian and the matrix-free global x-rotation ("kick").
//! * [`floquet`]: exact stroboscopic propagation, optionally with a
//!   sinusoidal field coupled to the total magnetization, together with the
//!   derivative state needed for the quantum Fisher information.
//! * [`observables`]: magnetization, entanglement, coherence, QFI,
//!   lifetime extraction and ensemble statistics.
//! * [`sweep`]: trajectories, disorder ensembles and checkpointed
//!   parameter sweeps.
//!
//! Units: ħ = 1, energies in units of |J1|, times in units of 1/|J1|.
//! Basis convention: bit `i` of a basis index is site `i + 1`, and a set bit
//! is spin up.

pub mod error;
pub mod floquet;
pub mod observables;
pub mod spin_ops;
pub mod sweep;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use floquet::{
    ac_period_phase, prepare_initial_state, trotter_oracle, AcFieldParams, DerivativePair,
    FloquetPropagator, StateVector,
};
pub use observables::{
    coherence, entanglement_entropy, lifetime, magnetization, qfi, saturation_average,
    EnsembleStatistics, Lifetime, SaturationWindow, TrajectoryRecord,
};
pub use spin_ops::{
    apply_kick, build_basis, build_hamiltonian, BasisIndexing, Boundary, ChainParams,
    DisorderRealization, SectorMatrix,
};
