use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::ac::AcFieldParams;
use crate::floquet::state::StateVector;
use crate::spin_ops::dense::dense_hamiltonian;
use crate::spin_ops::{apply_kick_in_place, ChainParams, DisorderRealization};

/// Reference propagation by second-order (Strang) splitting on the full
/// 2^N space.
///
/// Each period is cut into `steps_per_period` slices of width `dt`, and each
/// slice applies `exp(-i H0 dt/2) exp(-i f(t_mid) dt Z) exp(-i H0 dt/2)` with
/// `f` the instantaneous AC field sampled at the slice midpoint; the kick
/// follows at the end of every period. The static Hamiltonian comes from the
/// Kronecker-product construction and a single full-space diagonalization,
/// so nothing here shares code with the sector-blocked propagator beyond the
/// kick. Global error is O(steps^-2).
pub fn trotter_oracle(
    params: &ChainParams,
    disorder: &DisorderRealization,
    ac: Option<&AcFieldParams>,
    n_periods: u64,
    steps_per_period: usize,
    state: &StateVector,
) -> Result<StateVector> {
    if steps_per_period == 0 {
        return Err(Error::InvalidParameter { name: "steps_per_period", reason: "must be at least 1".into() });
    }
    params.validate()?;
    let n = params.n;
    if state.n() != n {
        return Err(Error::Dimension { expected: 1 << n, got: state.dim() });
    }
    let h0 = dense_hamiltonian(params, disorder)?;
    let eig = SymmetricEigen::new(h0);
    let dt = params.period / steps_per_period as f64;
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (mut col, e) in scaled.column_iter_mut().zip(eig.eigenvalues.iter()) {
        col *= Complex64::from_polar(1.0, -0.5 * e * dt);
    }
    let half: DMatrix<Complex64> = &scaled * v.adjoint();

    let total_sz: Vec<f64> = (0..1u32 << n).map(|s| s.count_ones() as f64 - 0.5 * n as f64).collect();
    let mut psi = DVector::from_column_slice(state.amplitudes());
    for period_index in 0..n_periods {
        let t0 = period_index as f64 * params.period;
        for step in 0..steps_per_period {
            psi = &half * &psi;
            if let Some(ac) = ac {
                let f = ac.value_at(t0 + (step as f64 + 0.5) * dt);
                for (a, z) in psi.iter_mut().zip(&total_sz) {
                    *a *= Complex64::from_polar(1.0, -f * dt * z);
                }
            }
            psi = &half * &psi;
        }
        apply_kick_in_place(psi.as_mut_slice(), n, params.phi);
    }
    StateVector::new(n, psi.as_slice().to_vec())
}
