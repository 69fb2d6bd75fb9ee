//! Exact stroboscopic propagation of the kicked chain, with an optional
//! sinusoidal field coupled to the total magnetization.

mod ac;
mod propagator;
mod state;
mod trotter;

pub use ac::{ac_period_phase, period_coupling, AcFieldParams};
pub use propagator::{FloquetPropagator, SectorPropagator};
pub use state::{prepare_initial_state, DerivativePair, StateVector, NORM_TOLERANCE};
pub use trotter::trotter_oracle;
