use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::{DerivativePair, StateVector};

/// QFI values below `-QFI_NEGATIVE_TOLERANCE` signal a corrupted derivative.
pub const QFI_NEGATIVE_TOLERANCE: f64 = 1e-10;

/// Magnetization per site `(1/N) <psi| sum_i S^z_i |psi>`.
pub fn magnetization(state: &StateVector) -> f64 {
    let n = state.n();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(idx, a)| a.norm_sqr() * (idx.count_ones() as f64 - 0.5 * n as f64))
        .sum();
    total / n as f64
}

fn shannon_bits(probabilities: impl Iterator<Item = f64>) -> f64 {
    let s: f64 = probabilities.filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum();
    s.max(0.0)
}

fn check_cut(state: &StateVector, cut: usize) -> Result<()> {
    if cut == 0 || cut >= state.n() {
        return Err(Error::InvalidParameter {
            name: "cut",
            reason: format!("bipartition must satisfy 1 <= cut <= N-1, got cut={cut} for N={}", state.n()),
        });
    }
    Ok(())
}

/// Amplitudes reshaped so rows index sites `1..=cut` (the low bits) and
/// columns the rest. Column-major storage matches the amplitude layout.
fn bipartite_matrix(state: &StateVector, cut: usize) -> DMatrix<Complex64> {
    let rows = 1 << cut;
    let cols = 1 << (state.n() - cut);
    DMatrix::from_column_slice(rows, cols, state.amplitudes())
}

/// Von Neumann entropy (bits) of sites `1..=cut`, from the Schmidt
/// coefficients of the reshaped amplitude matrix.
pub fn entanglement_entropy(state: &StateVector, cut: usize) -> Result<f64> {
    check_cut(state, cut)?;
    let sv = bipartite_matrix(state, cut).singular_values();
    Ok(shannon_bits(sv.iter().map(|s| s * s)))
}

/// Same quantity as [`entanglement_entropy`], from the eigenvalues of the
/// reduced density matrix of the smaller half.
pub fn entanglement_entropy_rdm(state: &StateVector, cut: usize) -> Result<f64> {
    check_cut(state, cut)?;
    let m = bipartite_matrix(state, cut);
    let rho = if m.nrows() <= m.ncols() { &m * m.adjoint() } else { m.adjoint() * &m };
    let evals = rho.symmetric_eigenvalues();
    Ok(shannon_bits(evals.iter().copied()))
}

/// Relative entropy of coherence (bits) in the S_z product basis. For a pure
/// state this is the Shannon entropy of the basis populations.
pub fn coherence(state: &StateVector) -> f64 {
    shannon_bits(state.amplitudes().iter().map(Complex64::norm_sqr))
}

/// `F = 4 (<dpsi|dpsi> - |<psi|dpsi>|^2)` from raw vectors.
pub fn qfi_from_parts(psi: &[Complex64], dpsi: &[Complex64]) -> Result<f64> {
    if psi.len() != dpsi.len() {
        return Err(Error::Dimension { expected: psi.len(), got: dpsi.len() });
    }
    let dd: f64 = dpsi.iter().map(Complex64::norm_sqr).sum();
    let overlap: Complex64 = psi.iter().zip(dpsi).map(|(a, b)| a.conj() * b).sum();
    let f = 4.0 * (dd - overlap.norm_sqr());
    if f < -QFI_NEGATIVE_TOLERANCE {
        return Err(Error::NumericalConsistency(format!("negative quantum Fisher information {f}")));
    }
    Ok(f.max(0.0))
}

/// Quantum Fisher information of a pure state family with respect to the AC
/// amplitude.
pub fn qfi(pair: &DerivativePair) -> Result<f64> {
    qfi_from_parts(pair.psi.amplitudes(), &pair.dpsi)
}

/// `F / (N (2t/pi)^2)`: QFI relative to the best uncorrelated N-spin echo.
/// Defined as zero at `t = 0`.
pub fn sql_ratio(f: f64, n: usize, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let scale = 2.0 * t / PI;
    f / (n as f64 * scale * scale)
}
