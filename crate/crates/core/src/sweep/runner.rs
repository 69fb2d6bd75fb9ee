use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::sweep::checkpoint::Checkpoint;
use crate::sweep::ensemble::{accumulate_realizations, empty_accumulator};
use crate::sweep::grid::{SweepCell, SweepGrid};

#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    /// Where progress is persisted. Without it the sweep cannot be resumed.
    pub checkpoint: Option<PathBuf>,
    /// Minimum wall time between mid-cell checkpoint writes. Finished cells
    /// are always written.
    pub checkpoint_interval: Duration,
    /// Stop (after saving) once this many realizations have been folded in
    /// this session. Used to exercise resumption.
    pub stop_after: Option<u64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { workers: 0, checkpoint: None, checkpoint_interval: Duration::from_secs(60), stop_after: None }
    }
}

/// Run every cell of `grid`, resuming from the checkpoint when one exists.
///
/// Realizations of a cell are folded in index order and cells are processed
/// in grid order, so the output is bit-identical for any worker count and
/// across interruption and resumption.
pub fn run_sweep(grid: &SweepGrid, options: &SweepOptions) -> Result<Vec<SweepCell>> {
    grid.validate()?;
    let cells = grid.cells();
    let hash = grid.hash();
    let mut checkpoint = match &options.checkpoint {
        Some(path) if path.exists() => {
            let cp = Checkpoint::load(path)?;
            if cp.grid_hash != hash || cp.cells.len() != cells.len() {
                return Err(Error::CheckpointMismatch { path: path.clone(), found: cp.grid_hash, expected: hash });
            }
            cp
        }
        _ => Checkpoint::new(hash, cells.len()),
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidParameter { name: "workers", reason: e.to_string() })?;

    let mut folded = 0u64;
    let mut last_save = Instant::now();
    let mut interrupted = false;
    pool.install(|| -> Result<()> {
        for (i, (_, params)) in cells.iter().enumerate() {
            let mut acc = checkpoint.cells[i].take().unwrap_or_else(|| empty_accumulator(params, &grid.settings));
            let start = acc.count();
            if start < grid.realizations {
                accumulate_realizations(params, &grid.settings, grid.seed, start..grid.realizations, &mut acc, |acc| {
                    folded = acc.count() - start;
                    let stop = options.stop_after.is_some_and(|limit| folded >= limit);
                    if let Some(path) = &options.checkpoint {
                        if stop || last_save.elapsed() >= options.checkpoint_interval {
                            checkpoint.cells[i] = Some(acc.clone());
                            checkpoint.save(path)?;
                            last_save = Instant::now();
                        }
                    }
                    Ok(!stop)
                })?;
                if options.stop_after.is_some_and(|limit| folded >= limit) {
                    checkpoint.cells[i] = Some(acc);
                    interrupted = true;
                    return Ok(());
                }
                checkpoint.cells[i] = Some(acc);
                if let Some(path) = &options.checkpoint {
                    checkpoint.save(path)?;
                    last_save = Instant::now();
                }
            } else {
                checkpoint.cells[i] = Some(acc);
            }
        }
        Ok(())
    })?;
    if interrupted {
        return Err(Error::Interrupted { completed: folded as usize });
    }

    cells
        .into_iter()
        .zip(checkpoint.cells)
        .map(|((coords, params), acc)| {
            let stats = acc.expect("every cell completed").finalize();
            SweepCell::from_stats(coords, params, stats, grid.settings.epsilon, grid.window())
        })
        .collect()
}
