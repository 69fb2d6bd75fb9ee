use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field `h_ac sin(omega t + theta)` coupled to the total S_z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcFieldParams {
    /// Amplitude `h_ac`; the QFI is evaluated at this value.
    pub amplitude: f64,
    /// Angular frequency `omega`.
    pub omega: f64,
    /// Phase offset `theta`.
    pub phase: f64,
}

impl AcFieldParams {
    /// Field resonant with period doubling (`omega = pi / T`), zero phase,
    /// zero amplitude.
    pub fn resonant(period: f64) -> Self {
        Self { amplitude: 0.0, omega: PI / period, phase: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("amplitude", self.amplitude), ("omega", self.omega), ("phase", self.phase)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, reason: format!("{value} is not finite") });
            }
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: format!("AC angular frequency must be positive, got {}", self.omega),
            });
        }
        Ok(())
    }

    /// Instantaneous field value `h_ac sin(omega t + theta)`.
    pub fn value_at(&self, t: f64) -> f64 {
        self.amplitude * (self.omega * t + self.phase).sin()
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `d Phi_n / d h_ac`: the integral of `sin(omega t + theta)` over period
/// `n`, independent of the amplitude.
///
/// Written as `T sin(omega (n + 1/2) T + theta) sinc(omega T / 2)`, which is
/// the cosine difference in product form and reduces to `T sin(theta)` at
/// `omega = 0`.
pub fn period_coupling(ac: &AcFieldParams, n: u64, period: f64) -> f64 {
    let centre = ac.omega * (n as f64 + 0.5) * period + ac.phase;
    period * centre.sin() * sinc(0.5 * ac.omega * period)
}

/// Phase `Phi_n = h_ac int_{nT}^{(n+1)T} sin(omega t + theta) dt` picked up
/// by the total S_z during period `n`.
pub fn ac_period_phase(ac: &AcFieldParams, n: u64, period: f64) -> f64 {
    ac.amplitude * period_coupling(ac, n, period)
}
