use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::ac::{period_coupling, AcFieldParams};
use crate::floquet::state::{DerivativePair, StateVector};
use crate::spin_ops::{
    apply_kick_in_place, build_basis, build_hamiltonian, BasisIndexing, ChainParams, DisorderRealization,
    SectorMatrix,
};

/// Eigendecomposition of one sector block and its one-period propagator.
#[derive(Debug, Clone)]
pub struct SectorPropagator {
    pub up: usize,
    /// Total S_z of the sector.
    pub total_sz: f64,
    /// Basis bitstrings of the sector (ascending).
    pub states: Vec<u32>,
    pub energies: Vec<f64>,
    /// Eigenvectors as columns.
    pub vectors: DMatrix<Complex64>,
    /// `exp(-i E T)` per eigenvalue.
    pub phases: Vec<Complex64>,
    /// `V diag(exp(-i E T)) V^dagger`, row-major.
    step: Vec<Complex64>,
}

impl SectorPropagator {
    fn new(states: Vec<u32>, n: usize, block: &SectorMatrix, period: f64) -> Self {
        let eig = SymmetricEigen::new(block.matrix.clone());
        let energies: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let phases: Vec<Complex64> = energies.iter().map(|e| Complex64::from_polar(1.0, -e * period)).collect();
        let v = eig.eigenvectors;
        let dim = energies.len();
        let mut scaled = v.clone();
        for (mut col, p) in scaled.column_iter_mut().zip(&phases) {
            col *= *p;
        }
        let w = &scaled * v.adjoint();
        let mut step = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            step.extend(w.row(r).iter().copied());
        }
        Self {
            up: block.up,
            total_sz: block.up as f64 - 0.5 * n as f64,
            states,
            energies,
            vectors: v,
            phases,
            step,
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `max |V^dagger V - 1|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.vectors.adjoint() * &self.vectors;
        let mut worst = 0.0f64;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((gram[(r, c)] - target).norm());
            }
        }
        worst
    }

    /// `V diag(E) V^dagger`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let mut scaled = self.vectors.clone();
        for (mut col, e) in scaled.column_iter_mut().zip(&self.energies) {
            col *= Complex64::new(*e, 0.0);
        }
        scaled * self.vectors.adjoint()
    }

    fn gather(&self, amps: &[Complex64], out: &mut [Complex64]) {
        for (o, &s) in out.iter_mut().zip(&self.states) {
            *o = amps[s as usize];
        }
    }

    fn scatter(&self, values: &[Complex64], amps: &mut [Complex64]) {
        for (v, &s) in values.iter().zip(&self.states) {
            amps[s as usize] = *v;
        }
    }

    /// `out = scale * W x`.
    fn apply(&self, x: &[Complex64], scale: Complex64, out: &mut [Complex64]) {
        let dim = self.dim();
        for (row, o) in self.step.chunks_exact(dim).zip(out.iter_mut()) {
            let acc: Complex64 = row.iter().zip(x).map(|(w, v)| w * v).sum();
            *o = scale * acc;
        }
    }

    /// `out = W^dagger (scale * x)`.
    fn apply_adjoint(&self, x: &[Complex64], scale: Complex64, out: &mut [Complex64]) {
        let dim = self.dim();
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for (row, xv) in self.step.chunks_exact(dim).zip(x) {
            let xv = scale * xv;
            for (o, w) in out.iter_mut().zip(row) {
                *o += w.conj() * xv;
            }
        }
    }
}

/// Exact one-period propagator of the kicked chain.
///
/// Because the static Hamiltonian and the AC coupling both commute with the
/// total S_z, the evolution over period `n` factorizes exactly into
///
/// ```text
/// U_n = U_kick exp(-i H0 T) exp(-i Phi_n S_z^tot)
/// ```
///
/// where `Phi_n` is the integrated AC phase. Inside each sector the AC factor
/// is a scalar, so one period costs one dense matvec per sector plus the
/// matrix-free kick. The decomposition is independent of the AC settings and
/// is built once per (params, disorder) pair.
#[derive(Debug, Clone)]
pub struct FloquetPropagator {
    n: usize,
    phi: f64,
    period: f64,
    sectors: Vec<SectorPropagator>,
    max_sector: usize,
}

impl FloquetPropagator {
    pub fn new(params: &ChainParams, disorder: &DisorderRealization) -> Result<Self> {
        params.validate()?;
        let basis = build_basis(params.n)?;
        let blocks = build_hamiltonian(params, disorder, &basis)?;
        Ok(Self::from_blocks(params, &basis, &blocks))
    }

    pub fn from_blocks(params: &ChainParams, basis: &BasisIndexing, blocks: &[SectorMatrix]) -> Self {
        let sectors: Vec<SectorPropagator> = basis
            .sectors()
            .iter()
            .zip(blocks)
            .map(|(sector, block)| SectorPropagator::new(sector.states.clone(), basis.n(), block, params.period))
            .collect();
        let max_sector = sectors.iter().map(SectorPropagator::dim).max().unwrap_or(0);
        Self { n: basis.n(), phi: params.phi, period: params.period, sectors, max_sector }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn sectors(&self) -> &[SectorPropagator] {
        &self.sectors
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim != 1 << self.n {
            return Err(Error::Dimension { expected: 1 << self.n, got: dim });
        }
        Ok(())
    }

    fn ac_phase(&self, ac: Option<&AcFieldParams>, period_index: u64) -> f64 {
        ac.map_or(0.0, |ac| ac.amplitude * period_coupling(ac, period_index, self.period))
    }

    /// `exp(-i H0 T) exp(-i Phi_n S_z)` on `state`, in place.
    pub fn free_evolve(&self, ac: Option<&AcFieldParams>, period_index: u64, state: &mut StateVector) -> Result<()> {
        self.check(state.dim())?;
        let phase = self.ac_phase(ac, period_index);
        let amps = state.amplitudes_mut();
        let mut x = vec![Complex64::new(0.0, 0.0); self.max_sector];
        let mut y = x.clone();
        for s in &self.sectors {
            let d = s.dim();
            s.gather(amps, &mut x[..d]);
            s.apply(&x[..d], Complex64::from_polar(1.0, -phase * s.total_sz), &mut y[..d]);
            s.scatter(&y[..d], amps);
        }
        Ok(())
    }

    /// `U_kick` on `state`, in place.
    pub fn kick(&self, state: &mut StateVector) -> Result<()> {
        self.check(state.dim())?;
        apply_kick_in_place(state.amplitudes_mut(), self.n, self.phi);
        Ok(())
    }

    /// One full period `n`: free evolution with the AC phase, then the kick.
    pub fn step(&self, ac: Option<&AcFieldParams>, period_index: u64, state: &mut StateVector) -> Result<()> {
        self.free_evolve(ac, period_index, state)?;
        self.kick(state)
    }

    /// Non-mutating form of [`step`](Self::step).
    pub fn evolve_period(
        &self,
        ac: Option<&AcFieldParams>,
        period_index: u64,
        state: &StateVector,
    ) -> Result<StateVector> {
        let mut out = state.clone();
        self.step(ac, period_index, &mut out)?;
        Ok(out)
    }

    /// Exact inverse of [`step`](Self::step) for the same period index.
    pub fn step_inverse(&self, ac: Option<&AcFieldParams>, period_index: u64, state: &mut StateVector) -> Result<()> {
        self.check(state.dim())?;
        apply_kick_in_place(state.amplitudes_mut(), self.n, -self.phi);
        let phase = self.ac_phase(ac, period_index);
        let amps = state.amplitudes_mut();
        let mut x = vec![Complex64::new(0.0, 0.0); self.max_sector];
        let mut y = x.clone();
        for s in &self.sectors {
            let d = s.dim();
            s.gather(amps, &mut x[..d]);
            s.apply_adjoint(&x[..d], Complex64::from_polar(1.0, phase * s.total_sz), &mut y[..d]);
            s.scatter(&y[..d], amps);
        }
        Ok(())
    }

    /// Free evolution of a state and its amplitude derivative.
    ///
    /// With `A = exp(-i H0 T) exp(-i Phi_n Z)` and `dPhi_n/dh_ac = g_n`, the
    /// product rule gives `dpsi <- A (dpsi - i g_n Z psi)`, valid at any
    /// amplitude including zero.
    pub fn free_evolve_with_derivative(
        &self,
        ac: &AcFieldParams,
        period_index: u64,
        pair: &mut DerivativePair,
    ) -> Result<()> {
        self.check(pair.psi.dim())?;
        self.check(pair.dpsi.len())?;
        let g = period_coupling(ac, period_index, self.period);
        let phase = ac.amplitude * g;
        let amps = pair.psi.amplitudes_mut();
        let damps = &mut pair.dpsi;
        let mut x = vec![Complex64::new(0.0, 0.0); self.max_sector];
        let mut dx = x.clone();
        let mut y = x.clone();
        for s in &self.sectors {
            let d = s.dim();
            s.gather(amps, &mut x[..d]);
            s.gather(damps, &mut dx[..d]);
            let source = Complex64::new(0.0, -g * s.total_sz);
            for (dv, v) in dx[..d].iter_mut().zip(&x[..d]) {
                *dv += source * v;
            }
            let scale = Complex64::from_polar(1.0, -phase * s.total_sz);
            s.apply(&x[..d], scale, &mut y[..d]);
            s.scatter(&y[..d], amps);
            s.apply(&dx[..d], scale, &mut y[..d]);
            s.scatter(&y[..d], damps);
        }
        Ok(())
    }

    /// Kick both members of a pair (the kick does not depend on `h_ac`).
    pub fn kick_pair(&self, pair: &mut DerivativePair) -> Result<()> {
        self.kick(&mut pair.psi)?;
        apply_kick_in_place(&mut pair.dpsi, self.n, self.phi);
        Ok(())
    }

    pub fn step_with_derivative(&self, ac: &AcFieldParams, period_index: u64, pair: &mut DerivativePair) -> Result<()> {
        self.free_evolve_with_derivative(ac, period_index, pair)?;
        self.kick_pair(pair)
    }

    /// Non-mutating form of [`step_with_derivative`](Self::step_with_derivative).
    pub fn evolve_period_with_derivative(
        &self,
        ac: &AcFieldParams,
        period_index: u64,
        pair: &DerivativePair,
    ) -> Result<DerivativePair> {
        let mut out = pair.clone();
        self.step_with_derivative(ac, period_index, &mut out)?;
        Ok(out)
    }
}
