use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin_ops::basis::{MAX_SITES, MIN_SITES};

/// Boundary rule of the chain. Only open chains are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    #[default]
    Open,
}

/// Static couplings and drive settings of a kicked chain.
///
/// `d` is the z-axis Dzyaloshinskii-Moriya strength. Physically it arises as
/// `E_y * g_ME` (electric field times magnetoelectric coupling), but only the
/// product enters the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainParams {
    /// Number of sites.
    pub n: usize,
    /// Nearest-neighbour exchange.
    pub j1: f64,
    /// Next-nearest-neighbour exchange.
    pub j2: f64,
    /// Dzyaloshinskii-Moriya strength.
    pub d: f64,
    /// Disorder half-width: each local field is uniform on `[-h, h]`.
    pub h: f64,
    /// Kick angle in radians.
    pub phi: f64,
    /// Drive period.
    pub period: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

impl Default for ChainParams {
    /// `J1 = -1`, `J2 = -J1/4`, `D = 0`, `phi = 3.05`, `T = 1`, eight sites,
    /// weak disorder `h = 1`.
    fn default() -> Self {
        Self {
            n: 8,
            j1: -1.0,
            j2: 0.25,
            d: 0.0,
            h: 1.0,
            phi: 3.05,
            period: 1.0,
            boundary: Boundary::Open,
        }
    }
}

impl ChainParams {
    pub fn validate(&self) -> Result<()> {
        if !(MIN_SITES..=MAX_SITES).contains(&self.n) {
            return Err(Error::Capacity { n: self.n, min: MIN_SITES, max: MAX_SITES });
        }
        for (name, value) in [
            ("j1", self.j1),
            ("j2", self.j2),
            ("d", self.d),
            ("h", self.h),
            ("phi", self.phi),
            ("period", self.period),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, reason: format!("{value} is not finite") });
            }
        }
        if self.h < 0.0 {
            return Err(Error::InvalidParameter {
                name: "h",
                reason: format!("disorder width must be non-negative, got {}", self.h),
            });
        }
        if self.period <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "period",
                reason: format!("drive period must be positive, got {}", self.period),
            });
        }
        Ok(())
    }
}

/// One draw of the local z fields.
///
/// Field `i` is a pure function of `(seed, index, i)`: the ChaCha20 stream is
/// keyed by the master seed, the stream id is the realization index and the
/// word position is derived from the site. Realizations can therefore be
/// regenerated in any order, on any thread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisorderRealization {
    pub fields: Vec<f64>,
    pub seed: u64,
    pub index: u64,
}

impl DisorderRealization {
    pub fn generate(n: usize, h: f64, seed: u64, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let fields = (0..n)
            .map(|site| {
                // one u64 per site = two 32-bit words
                rng.set_word_pos(2 * site as u128);
                let u: f64 = rng.random();
                h * (2.0 * u - 1.0)
            })
            .collect();
        Self { fields, seed, index }
    }

    /// A realization with explicitly chosen fields (seed and index zero).
    pub fn from_fields(fields: Vec<f64>) -> Self {
        Self { fields, seed: 0, index: 0 }
    }

    /// Clean chain: all fields zero.
    pub fn zero(n: usize) -> Self {
        Self::from_fields(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }
}
