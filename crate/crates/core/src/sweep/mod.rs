//! Trajectories, disorder ensembles and checkpointed parameter sweeps.

mod checkpoint;
mod ensemble;
mod grid;
mod runner;
mod trajectory;

pub use checkpoint::{Checkpoint, CHECKPOINT_MAGIC, CHECKPOINT_VERSION};
pub use ensemble::{accumulate_realizations, run_ensemble};
pub use grid::{Axis, AxisName, SweepCell, SweepGrid};
pub use runner::{run_sweep, SweepOptions};
pub use trajectory::{record_times, run_trajectory, RunSettings, Sampling};
