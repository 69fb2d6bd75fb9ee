//! Full-space reference constructions.
//!
//! These build operators on the whole 2^N space from explicit Kronecker
//! products of 2x2 Pauli factors. They are slow and only meant for small
//! chains: the Trotter reference propagator and cross-checks of the
//! sector-blocked assembly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_ops::basis::BasisIndexing;
use crate::spin_ops::chain::{ChainParams, DisorderRealization};
use crate::spin_ops::hamiltonian::SectorMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-site spin operators `sigma/2` in the (down, up) ordering used by
/// the basis: local index 0 is down, 1 is up.
pub fn spin_x() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]) * Complex64::new(0.5, 0.0)
}

pub fn spin_y() -> DMatrix<Complex64> {
    // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
    DMatrix::from_row_slice(2, 2, &[ZERO, I, -I, ZERO]) * Complex64::new(0.5, 0.0)
}

pub fn spin_z() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[-ONE, ZERO, ZERO, ONE]) * Complex64::new(0.5, 0.0)
}

/// Embed single-site operators into the full space. `ops[k] = (site, op)`;
/// sites not listed carry the identity. Site 0 is the least significant
/// factor, i.e. the rightmost one in the Kronecker product.
pub fn site_operator(n: usize, ops: &[(usize, &DMatrix<Complex64>)]) -> DMatrix<Complex64> {
    let identity = DMatrix::<Complex64>::identity(2, 2);
    let mut full = DMatrix::<Complex64>::identity(1, 1);
    for site in (0..n).rev() {
        let factor = ops.iter().find(|(s, _)| *s == site).map_or(&identity, |(_, op)| *op);
        full = full.kronecker(factor);
    }
    full
}

/// Total S_z on the full space.
pub fn total_sz(n: usize) -> DMatrix<Complex64> {
    let sz = spin_z();
    (0..n).fold(DMatrix::zeros(1 << n, 1 << n), |acc, i| acc + site_operator(n, &[(i, &sz)]))
}

/// The static Hamiltonian on the full space, term by term.
pub fn dense_hamiltonian(params: &ChainParams, disorder: &DisorderRealization) -> Result<DMatrix<Complex64>> {
    let n = params.n;
    if disorder.len() != n {
        return Err(Error::Dimension { expected: n, got: disorder.len() });
    }
    let (sx, sy, sz) = (spin_x(), spin_y(), spin_z());
    let c = |x: f64| Complex64::new(x, 0.0);
    let dot = |i: usize, j: usize| {
        site_operator(n, &[(i, &sx), (j, &sx)])
            + site_operator(n, &[(i, &sy), (j, &sy)])
            + site_operator(n, &[(i, &sz), (j, &sz)])
    };
    let mut h = DMatrix::<Complex64>::zeros(1 << n, 1 << n);
    for i in 0..n.saturating_sub(1) {
        h += dot(i, i + 1) * c(params.j1);
        let cross = site_operator(n, &[(i, &sx), (i + 1, &sy)]) - site_operator(n, &[(i, &sy), (i + 1, &sx)]);
        h += cross * c(params.d);
    }
    for i in 0..n.saturating_sub(2) {
        h += dot(i, i + 2) * c(params.j2);
    }
    for (i, field) in disorder.fields.iter().enumerate() {
        h -= site_operator(n, &[(i, &sz)]) * c(*field);
    }
    Ok(h)
}

/// Scatter sector blocks back into a full-space matrix.
pub fn embed_sectors(basis: &BasisIndexing, sectors: &[SectorMatrix]) -> DMatrix<Complex64> {
    let dim = basis.dimension();
    let mut full = DMatrix::<Complex64>::zeros(dim, dim);
    for (sector, block) in basis.sectors().iter().zip(sectors) {
        for (r, &row_state) in sector.states.iter().enumerate() {
            for (c, &col_state) in sector.states.iter().enumerate() {
                full[(row_state as usize, col_state as usize)] = block.matrix[(r, c)];
            }
        }
    }
    full
}
