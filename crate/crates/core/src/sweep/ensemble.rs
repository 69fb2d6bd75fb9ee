use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::observables::{EnsembleAccumulator, EnsembleStatistics};
use crate::spin_ops::{ChainParams, DisorderRealization};
use crate::sweep::trajectory::{record_times, run_trajectory, RunSettings};

/// Realizations simulated concurrently before their records are folded.
pub(crate) fn chunk_size() -> usize {
    (4 * rayon::current_num_threads()).max(8)
}

pub(crate) fn empty_accumulator(params: &ChainParams, settings: &RunSettings) -> EnsembleAccumulator {
    EnsembleAccumulator::new(
        params.n,
        params.period,
        record_times(settings.t_max, settings.stride),
        settings.ac.is_some(),
    )
}

/// Simulate realizations `range` and fold them into `acc` in index order.
///
/// Work is spread over the current rayon pool a chunk at a time; records are
/// folded strictly by realization index, so the result does not depend on
/// the number of threads or on scheduling. `after_chunk` is called with the
/// accumulator after every chunk and may stop the loop by returning `false`.
/// Returns the number of realizations folded.
pub fn accumulate_realizations(
    params: &ChainParams,
    settings: &RunSettings,
    seed: u64,
    range: Range<u64>,
    acc: &mut EnsembleAccumulator,
    mut after_chunk: impl FnMut(&EnsembleAccumulator) -> Result<bool>,
) -> Result<u64> {
    let chunk = chunk_size() as u64;
    let mut start = range.start;
    while start < range.end {
        let end = (start + chunk).min(range.end);
        let records = (start..end)
            .into_par_iter()
            .map(|index| {
                let disorder = DisorderRealization::generate(params.n, params.h, seed, index);
                run_trajectory(params, &disorder, settings)
            })
            .collect::<Result<Vec<_>>>()?;
        for record in &records {
            acc.push(record)?;
        }
        start = end;
        if !after_chunk(acc)? {
            break;
        }
    }
    Ok(start - range.start)
}

/// Disorder average over realizations `0..realizations` drawn from `seed`.
pub fn run_ensemble(
    params: &ChainParams,
    settings: &RunSettings,
    realizations: u64,
    seed: u64,
) -> Result<EnsembleStatistics> {
    if realizations == 0 {
        return Err(Error::InvalidParameter { name: "realizations", reason: "must be at least 1".into() });
    }
    params.validate()?;
    settings.validate()?;
    let mut acc = empty_accumulator(params, settings);
    accumulate_realizations(params, settings, seed, 0..realizations, &mut acc, |_| Ok(true))?;
    Ok(acc.finalize())
}
