//! Scalar diagnostics of pure states and of stroboscopic series.

mod record;
mod series;
mod stats;
mod state;

pub use record::TrajectoryRecord;
pub use series::{lifetime, lifetime_of_series, saturation_average, Lifetime, SaturationWindow};
pub use stats::{EnsembleAccumulator, EnsembleStatistics, SeriesStats, Welford};
pub use state::{
    coherence, entanglement_entropy, entanglement_entropy_rdm, magnetization, qfi, qfi_from_parts, sql_ratio,
    QFI_NEGATIVE_TOLERANCE,
};
