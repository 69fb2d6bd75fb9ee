use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables::series::Lifetime;
use crate::observables::state::sql_ratio;
use crate::observables::stats::peak;
use crate::spin_ops::ChainParams;

/// Stroboscopic time series of one disorder realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub params: ChainParams,
    pub seed: u64,
    pub index: u64,
    /// Recorded period counts `n` (time `t = nT`), strictly increasing.
    pub times: Vec<u64>,
    pub magnetization: Vec<f64>,
    /// Half-chain entanglement entropy (bits).
    pub entanglement: Vec<f64>,
    /// Relative entropy of coherence (bits).
    pub coherence: Vec<f64>,
    pub qfi: Option<Vec<f64>>,
    /// Lifetime of this realization's rectified magnetization.
    pub lifetime: Lifetime,
    pub cap: u64,
}

impl TrajectoryRecord {
    /// Check series lengths, time ordering and the physical bounds of every
    /// point (with slack `tol` for rounding).
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        let len = self.times.len();
        for l in [self.magnetization.len(), self.entanglement.len(), self.coherence.len()]
            .into_iter()
            .chain(self.qfi.as_ref().map(Vec::len))
        {
            if l != len {
                return Err(Error::Dimension { expected: len, got: l });
            }
        }
        if self.times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NumericalConsistency("record times not strictly increasing".into()));
        }
        let n = self.params.n;
        let half = (n / 2).min(n - n / 2) as f64;
        let bad = |what: &str, v: f64| Err(Error::NumericalConsistency(format!("{what} out of range: {v}")));
        for &m in &self.magnetization {
            if m.abs() > 0.5 + tol {
                return bad("magnetization", m);
            }
        }
        for &s in &self.entanglement {
            if !(-tol..=half + tol).contains(&s) {
                return bad("entanglement", s);
            }
        }
        for &c in &self.coherence {
            if !(-tol..=n as f64 + tol).contains(&c) {
                return bad("coherence", c);
            }
        }
        for &f in self.qfi.iter().flatten() {
            if f < -tol {
                return bad("qfi", f);
            }
        }
        Ok(())
    }

    /// `(max_t F/(N(2t/pi)^2), argmax t)` for this realization.
    pub fn peak_qfi_ratio(&self) -> Option<(f64, u64)> {
        let qfi = self.qfi.as_ref()?;
        let ratio: Vec<f64> = self
            .times
            .iter()
            .zip(qfi)
            .map(|(&t, &f)| sql_ratio(f, self.params.n, t as f64 * self.params.period))
            .collect();
        peak(&self.times, &ratio)
    }
}
