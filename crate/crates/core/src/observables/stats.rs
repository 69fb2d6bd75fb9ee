use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables::record::TrajectoryRecord;
use crate::observables::series::{lifetime_of_series, saturation_average, Lifetime, SaturationWindow};
use crate::observables::state::sql_ratio;

/// Streaming mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Welford {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combine two partial accumulations (Chan et al. pairwise update).
    pub fn merge(&self, other: &Welford) -> Welford {
        if other.count == 0 {
            return *self;
        }
        if self.count == 0 {
            return *other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Welford { count, mean, m2 }
    }

    /// Sample standard deviation over `sqrt(count)`; zero for fewer than two samples.
    pub fn stderr(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64).sqrt() / (self.count as f64).sqrt()
    }
}

/// Per-time mean and standard error of one observable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesStats {
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl SeriesStats {
    fn from_accumulators(acc: &[Welford]) -> Self {
        Self { mean: acc.iter().map(|w| w.mean).collect(), stderr: acc.iter().map(Welford::stderr).collect() }
    }
}

/// Running disorder average of trajectory records sharing one time grid.
///
/// Memory is set by the number of recorded times, not by the number of
/// realizations, apart from one lifetime and one peak QFI ratio kept per
/// realization for spread diagnostics. Realizations should be folded in
/// index order for bit-reproducible results.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleAccumulator {
    pub n: usize,
    pub period: f64,
    pub times: Vec<u64>,
    pub magnetization: Vec<Welford>,
    pub entanglement: Vec<Welford>,
    pub coherence: Vec<Welford>,
    pub qfi: Option<Vec<Welford>>,
    pub realization_lifetimes: Vec<Lifetime>,
    pub realization_peak_qfi_ratio: Vec<f64>,
}

impl EnsembleAccumulator {
    pub fn new(n: usize, period: f64, times: Vec<u64>, with_qfi: bool) -> Self {
        let zeros = vec![Welford::default(); times.len()];
        Self {
            n,
            period,
            magnetization: zeros.clone(),
            entanglement: zeros.clone(),
            coherence: zeros.clone(),
            qfi: with_qfi.then(|| zeros.clone()),
            times,
            realization_lifetimes: Vec::new(),
            realization_peak_qfi_ratio: Vec::new(),
        }
    }

    pub fn count(&self) -> u64 {
        self.realization_lifetimes.len() as u64
    }

    pub fn push(&mut self, record: &TrajectoryRecord) -> Result<()> {
        if record.times != self.times {
            return Err(Error::Dimension { expected: self.times.len(), got: record.times.len() });
        }
        if record.qfi.is_some() != self.qfi.is_some() {
            return Err(Error::InvalidParameter {
                name: "qfi",
                reason: "trajectory and ensemble disagree on whether the QFI is tracked".into(),
            });
        }
        let channels = [
            (&mut self.magnetization, &record.magnetization),
            (&mut self.entanglement, &record.entanglement),
            (&mut self.coherence, &record.coherence),
        ];
        for (acc, values) in channels {
            acc.iter_mut().zip(values).for_each(|(w, &x)| w.push(x));
        }
        if let (Some(acc), Some(values)) = (self.qfi.as_mut(), record.qfi.as_ref()) {
            acc.iter_mut().zip(values).for_each(|(w, &x)| w.push(x));
        }
        self.realization_lifetimes.push(record.lifetime);
        self.realization_peak_qfi_ratio.push(record.peak_qfi_ratio().map_or(f64::NAN, |(r, _)| r));
        Ok(())
    }

    /// Fold `other` (covering later realizations) into `self`.
    pub fn merge(&mut self, other: &EnsembleAccumulator) -> Result<()> {
        if other.times != self.times || other.qfi.is_some() != self.qfi.is_some() {
            return Err(Error::Dimension { expected: self.times.len(), got: other.times.len() });
        }
        let pairs = [
            (&mut self.magnetization, &other.magnetization),
            (&mut self.entanglement, &other.entanglement),
            (&mut self.coherence, &other.coherence),
        ];
        for (a, b) in pairs {
            a.iter_mut().zip(b).for_each(|(x, y)| *x = x.merge(y));
        }
        if let (Some(a), Some(b)) = (self.qfi.as_mut(), other.qfi.as_ref()) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x = x.merge(y));
        }
        self.realization_lifetimes.extend_from_slice(&other.realization_lifetimes);
        self.realization_peak_qfi_ratio.extend_from_slice(&other.realization_peak_qfi_ratio);
        Ok(())
    }

    pub fn finalize(&self) -> EnsembleStatistics {
        EnsembleStatistics {
            n: self.n,
            period: self.period,
            realizations: self.count(),
            times: self.times.clone(),
            magnetization: SeriesStats::from_accumulators(&self.magnetization),
            entanglement: SeriesStats::from_accumulators(&self.entanglement),
            coherence: SeriesStats::from_accumulators(&self.coherence),
            qfi: self.qfi.as_deref().map(SeriesStats::from_accumulators),
            realization_lifetimes: self.realization_lifetimes.clone(),
            realization_peak_qfi_ratio: self.realization_peak_qfi_ratio.clone(),
        }
    }
}

/// Disorder-averaged stroboscopic series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStatistics {
    pub n: usize,
    pub period: f64,
    pub realizations: u64,
    pub times: Vec<u64>,
    /// Signed magnetization per site.
    pub magnetization: SeriesStats,
    /// Half-chain entanglement entropy in bits.
    pub entanglement: SeriesStats,
    /// Relative entropy of coherence in bits.
    pub coherence: SeriesStats,
    pub qfi: Option<SeriesStats>,
    pub realization_lifetimes: Vec<Lifetime>,
    pub realization_peak_qfi_ratio: Vec<f64>,
}

impl EnsembleStatistics {
    /// Lifetime of the rectified ensemble-mean magnetization.
    pub fn lifetime(&self, epsilon: f64) -> Result<Lifetime> {
        lifetime_of_series(&self.times, &self.magnetization.mean, epsilon)
    }

    pub fn entanglement_saturation(&self, window: SaturationWindow) -> Result<f64> {
        saturation_average(&self.times, &self.entanglement.mean, window)
    }

    pub fn coherence_saturation(&self, window: SaturationWindow) -> Result<f64> {
        saturation_average(&self.times, &self.coherence.mean, window)
    }

    /// Mean QFI over the uncorrelated-spin bound, per recorded time.
    pub fn qfi_ratio(&self) -> Option<Vec<f64>> {
        let qfi = self.qfi.as_ref()?;
        Some(
            self.times
                .iter()
                .zip(&qfi.mean)
                .map(|(&t, &f)| sql_ratio(f, self.n, t as f64 * self.period))
                .collect(),
        )
    }

    /// `(max_t ratio, argmax t)` over `t > 0`; the first maximum wins ties.
    pub fn max_qfi_ratio(&self) -> Option<(f64, u64)> {
        let ratio = self.qfi_ratio()?;
        peak(&self.times, &ratio)
    }

    /// Median over realizations of each trajectory's peak QFI ratio.
    pub fn median_peak_qfi_ratio(&self) -> Option<f64> {
        let mut v: Vec<f64> = self.realization_peak_qfi_ratio.iter().copied().filter(|x| x.is_finite()).collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let mid = v.len() / 2;
        Some(if v.len() % 2 == 1 { v[mid] } else { 0.5 * (v[mid - 1] + v[mid]) })
    }
}

pub(crate) fn peak(times: &[u64], values: &[f64]) -> Option<(f64, u64)> {
    times
        .iter()
        .zip(values)
        .filter(|(&t, _)| t > 0)
        .fold(None, |best: Option<(f64, u64)>, (&t, &v)| match best {
            Some((b, _)) if b >= v => best,
            _ => Some((v, t)),
        })
}
