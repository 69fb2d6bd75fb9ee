//! Execution of a resolved [`RunConfig`].

use std::path::PathBuf;

use pftc_core::observables::EnsembleAccumulator;
use pftc_core::sweep::{run_ensemble, run_sweep, run_trajectory, SweepCell, SweepOptions};
use pftc_core::{DisorderRealization, EnsembleStatistics};

use crate::config::{ConfigError, Mode, RunConfig};
use crate::output;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Runtime(#[from] pftc_core::Error),
    #[error("cannot write results: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(pftc_core::Error::InvalidParameter { .. } | pftc_core::Error::Capacity { .. }) => 2,
            CliError::Runtime(_) | CliError::Output(_) => 3,
        }
    }
}

/// What a run produced.
#[derive(Debug)]
pub enum Outcome {
    Series(Box<EnsembleStatistics>),
    Cells(Vec<SweepCell>),
}

/// Simulate without writing anything. `stop_after` interrupts sweeps after
/// that many realizations (progress is kept in the checkpoint).
pub fn simulate(cfg: &RunConfig, stop_after: Option<u64>) -> Result<Outcome, CliError> {
    let grid = &cfg.grid;
    match cfg.mode {
        Mode::Evolve => {
            let p = &grid.base;
            let disorder = DisorderRealization::generate(p.n, p.h, grid.seed, cfg.index);
            let record = run_trajectory(p, &disorder, &grid.settings)?;
            let mut acc = EnsembleAccumulator::new(p.n, p.period, record.times.clone(), record.qfi.is_some());
            acc.push(&record)?;
            Ok(Outcome::Series(Box::new(acc.finalize())))
        }
        Mode::Ensemble => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| ConfigError(format!("cannot start {} workers: {e}", cfg.workers)))?;
            let stats = pool.install(|| run_ensemble(&grid.base, &grid.settings, grid.realizations, grid.seed))?;
            Ok(Outcome::Series(Box::new(stats)))
        }
        Mode::Sweep | Mode::QfiScaling => {
            let options = SweepOptions {
                workers: cfg.workers,
                checkpoint: cfg.checkpoint.clone(),
                checkpoint_interval: cfg.checkpoint_interval,
                stop_after,
            };
            Ok(Outcome::Cells(run_sweep(grid, &options)?))
        }
    }
}

/// Simulate and write all result tables; returns the written paths.
pub fn execute(cfg: &RunConfig, stop_after: Option<u64>) -> Result<Vec<PathBuf>, CliError> {
    let written = match simulate(cfg, stop_after)? {
        Outcome::Series(stats) => output::emit_series(cfg, &stats, &cfg.output)?,
        Outcome::Cells(cells) => output::emit_sweep(cfg, &cells, &cfg.output)?,
    };
    Ok(written)
}
