use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::observables::{EnsembleStatistics, Lifetime, SaturationWindow};
use crate::spin_ops::ChainParams;
use crate::sweep::trajectory::RunSettings;

/// A chain parameter that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisName {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "J2", alias = "j2")]
    J2,
    #[serde(rename = "D", alias = "d")]
    D,
    #[serde(rename = "N", alias = "n")]
    N,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::H => "h",
            AxisName::Phi => "phi",
            AxisName::J2 => "J2",
            AxisName::D => "D",
            AxisName::N => "N",
        }
    }

    fn apply(&self, params: &mut ChainParams, value: f64) {
        match self {
            AxisName::H => params.h = value,
            AxisName::Phi => params.phi = value,
            AxisName::J2 => params.j2 = value,
            AxisName::D => params.d = value,
            AxisName::N => params.n = value as usize,
        }
    }
}

impl std::str::FromStr for AxisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(AxisName::H),
            "phi" => Ok(AxisName::Phi),
            "J2" | "j2" => Ok(AxisName::J2),
            "D" | "d" => Ok(AxisName::D),
            "N" | "n" => Ok(AxisName::N),
            other => Err(Error::InvalidParameter {
                name: "axis",
                reason: format!("unknown axis `{other}` (expected one of h, phi, J2, D, N)"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: AxisName,
    pub values: Vec<f64>,
}

/// A grid of at most two swept chain parameters around a fixed template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub axes: Vec<Axis>,
    pub base: ChainParams,
    pub settings: RunSettings,
    pub realizations: u64,
    pub seed: u64,
    /// Saturation window; defaults to the last fifth of the run.
    pub window: Option<SaturationWindow>,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.axes.len() > 2 {
            return Err(Error::InvalidParameter {
                name: "axes",
                reason: format!("at most two swept axes are supported, got {}", self.axes.len()),
            });
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::InvalidParameter { name: "axes", reason: "the two axes must differ".into() });
        }
        for axis in &self.axes {
            if axis.values.is_empty() {
                return Err(Error::InvalidParameter {
                    name: "axes",
                    reason: format!("axis {} has no values", axis.name.as_str()),
                });
            }
            if let Some(v) = axis.values.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "axes",
                    reason: format!("axis {} has non-finite value {v}", axis.name.as_str()),
                });
            }
            if axis.name == AxisName::N {
                if let Some(v) = axis.values.iter().find(|v| v.fract() != 0.0 || **v < 1.0) {
                    return Err(Error::InvalidParameter {
                        name: "axes",
                        reason: format!("N axis value {v} is not a positive integer"),
                    });
                }
            }
        }
        if self.realizations == 0 {
            return Err(Error::InvalidParameter { name: "realizations", reason: "must be at least 1".into() });
        }
        self.settings.validate()?;
        self.window().validate(self.settings.t_max)?;
        for (_, params) in self.cells() {
            params.validate()?;
        }
        Ok(())
    }

    pub fn window(&self) -> SaturationWindow {
        self.window.unwrap_or_else(|| SaturationWindow::tail(self.settings.t_max))
    }

    /// Cells in row-major order (first axis outermost) with their coordinates.
    pub fn cells(&self) -> Vec<(Vec<f64>, ChainParams)> {
        let mut cells = vec![(Vec::new(), self.base)];
        for axis in &self.axes {
            cells = cells
                .into_iter()
                .flat_map(|(coords, params)| {
                    axis.values.iter().map(move |&v| {
                        let mut p = params;
                        axis.name.apply(&mut p, v);
                        let mut c = coords.clone();
                        c.push(v);
                        (c, p)
                    })
                })
                .collect();
        }
        cells
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("grid serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// One finished grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub coords: Vec<f64>,
    pub params: ChainParams,
    pub stats: EnsembleStatistics,
    pub lifetime: Lifetime,
    pub ent_sat: f64,
    pub coh_sat: f64,
    /// `(max_t F/(N(2t/pi)^2), argmax t)` when the QFI is tracked.
    pub max_qfi_ratio: Option<(f64, u64)>,
}

impl SweepCell {
    /// Derive the scalar summaries from the stored series.
    pub fn from_stats(
        coords: Vec<f64>,
        params: ChainParams,
        stats: EnsembleStatistics,
        epsilon: f64,
        window: SaturationWindow,
    ) -> Result<Self> {
        Ok(Self {
            lifetime: stats.lifetime(epsilon)?,
            ent_sat: stats.entanglement_saturation(window)?,
            coh_sat: stats.coherence_saturation(window)?,
            max_qfi_ratio: stats.max_qfi_ratio(),
            coords,
            params,
            stats,
        })
    }
}
