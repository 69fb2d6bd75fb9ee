use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_ops::MAX_SITES;

/// Allowed deviation of `||psi||` from one.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Pure state of `n` spins as `2^n` amplitudes in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes, rejecting vectors whose norm is not one.
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n > MAX_SITES {
            return Err(Error::Capacity { n, min: 0, max: MAX_SITES });
        }
        if amps.len() != 1 << n {
            return Err(Error::Dimension { expected: 1 << n, got: amps.len() });
        }
        let norm = l2(&amps);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, amps })
    }

    /// Wrap amplitudes after rescaling them to unit norm.
    pub fn normalized(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = l2(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::new(n, amps)
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let dim = amps.len();
        *amps.get_mut(index).ok_or(Error::Dimension { expected: dim, got: index })? = Complex64::new(1.0, 0.0);
        Self::new(n, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Mutable access for unitary updates. Callers must preserve the norm.
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        l2(&self.amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Euclidean distance `||self - other||` (phase sensitive).
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Multiply by a global phase `e^{i alpha}`.
    pub fn with_global_phase(mut self, alpha: f64) -> Self {
        let z = Complex64::from_polar(1.0, alpha);
        self.amps.iter_mut().for_each(|a| *a *= z);
        self
    }
}

pub(crate) fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A state together with its derivative with respect to the AC amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativePair {
    pub psi: StateVector,
    /// Unnormalized `d|psi>/d h_ac`.
    pub dpsi: Vec<Complex64>,
}

impl DerivativePair {
    /// Initial pair: the prepared state does not depend on the amplitude.
    pub fn new(psi: StateVector) -> Self {
        let dpsi = vec![Complex64::new(0.0, 0.0); psi.dim()];
        Self { psi, dpsi }
    }
}

/// Product state `prod_j [cos(theta_j/2)|up> + sin(theta_j/2)|down>]`, one
/// angle per site.
pub fn prepare_initial_state(theta: &[f64]) -> Result<StateVector> {
    let n = theta.len();
    if n > MAX_SITES {
        return Err(Error::Capacity { n, min: 1, max: MAX_SITES });
    }
    let local: Vec<(f64, f64)> = theta
        .iter()
        .map(|t| {
            let (s, c) = (0.5 * t).sin_cos();
            (s, c) // (down, up)
        })
        .collect();
    let amps = (0..1usize << n)
        .map(|idx| {
            let amp = local
                .iter()
                .enumerate()
                .map(|(site, &(down, up))| if idx >> site & 1 == 1 { up } else { down })
                .product::<f64>();
            Complex64::new(amp, 0.0)
        })
        .collect();
    StateVector::new(n, amps)
}
