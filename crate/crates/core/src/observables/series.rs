use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First stroboscopic time at which the rectified magnetization drops below
/// threshold, or a marker that it never did within the simulated horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lifetime {
    Reached(u64),
    ExceededCap(u64),
}

impl Lifetime {
    /// Measured value, or the cap for a capped run (a lower bound).
    pub fn value(&self) -> u64 {
        match *self {
            Lifetime::Reached(t) | Lifetime::ExceededCap(t) => t,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, Lifetime::ExceededCap(_))
    }
}

/// Index of the first point with `|value| < epsilon` in an evenly sampled
/// series starting at zero; `ExceededCap(len - 1)` if none.
pub fn lifetime(series: &[f64], epsilon: f64) -> Result<Lifetime> {
    let times: Vec<u64> = (0..series.len() as u64).collect();
    lifetime_of_series(&times, series, epsilon)
}

/// Like [`lifetime`], for a series sampled at explicit stroboscopic times.
pub fn lifetime_of_series(times: &[u64], values: &[f64], epsilon: f64) -> Result<Lifetime> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter { name: "epsilon", reason: format!("must be positive, got {epsilon}") });
    }
    if times.len() != values.len() {
        return Err(Error::Dimension { expected: times.len(), got: values.len() });
    }
    let last = *times.last().ok_or(Error::EmptySeries)?;
    Ok(times
        .iter()
        .zip(values)
        .find(|(_, v)| v.abs() < epsilon)
        .map_or(Lifetime::ExceededCap(last), |(&t, _)| Lifetime::Reached(t)))
}

/// Stroboscopic window `[t1, t2]` (inclusive) for saturation averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaturationWindow {
    pub t1: u64,
    pub t2: u64,
}

impl SaturationWindow {
    /// The last fifth of the run: `[floor(0.8 t_max), t_max]`.
    pub fn tail(t_max: u64) -> Self {
        let t1 = (t_max * 4 / 5).min(t_max.saturating_sub(1));
        Self { t1, t2: t_max }
    }

    pub fn validate(&self, t_max: u64) -> Result<()> {
        if self.t1 >= self.t2 || self.t2 > t_max {
            return Err(Error::InvalidParameter {
                name: "window",
                reason: format!("need 0 <= t1 < t2 <= t_max={t_max}, got [{}, {}]", self.t1, self.t2),
            });
        }
        Ok(())
    }
}

/// Arithmetic mean of the recorded points with `t1 <= t <= t2`.
pub fn saturation_average(times: &[u64], values: &[f64], window: SaturationWindow) -> Result<f64> {
    if times.len() != values.len() {
        return Err(Error::Dimension { expected: times.len(), got: values.len() });
    }
    let (&first, &last) = times.first().zip(times.last()).ok_or(Error::EmptySeries)?;
    if window.t1 >= window.t2 || window.t1 < first || window.t2 > last {
        return Err(Error::WindowOutOfRange { t1: window.t1, t2: window.t2, first, last });
    }
    let (sum, count) = times
        .iter()
        .zip(values)
        .filter(|(&t, _)| t >= window.t1 && t <= window.t2)
        .fold((0.0, 0usize), |(s, c), (_, v)| (s + v, c + 1));
    if count == 0 {
        return Err(Error::EmptySeries);
    }
    Ok(sum / count as f64)
}
