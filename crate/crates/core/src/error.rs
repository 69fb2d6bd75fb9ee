use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulation core.
#[derive(Debug, Error)]
pub enum Error {
    #[error("chain length {n} outside supported range {min}..={max}")]
    Capacity { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("empty series")]
    EmptySeries,

    #[error("averaging window [{t1}, {t2}] not contained in series range [{first}, {last}]")]
    WindowOutOfRange { t1: u64, t2: u64, first: u64, last: u64 },

    #[error("numerical consistency violated: {0}")]
    NumericalConsistency(String),

    #[error("checkpoint {path} belongs to a different grid (hash {found}, expected {expected})")]
    CheckpointMismatch { path: PathBuf, found: String, expected: String },

    #[error("malformed checkpoint {path}: {reason}")]
    CheckpointFormat { path: PathBuf, reason: String },

    #[error("sweep interrupted after {completed} tasks; progress saved to checkpoint")]
    Interrupted { completed: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
