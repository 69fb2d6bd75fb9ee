use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_ops::basis::BasisIndexing;
use crate::spin_ops::chain::{ChainParams, DisorderRealization};

/// The static Hamiltonian restricted to one total-S_z sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorMatrix {
    /// Number of up spins labelling the sector.
    pub up: usize,
    pub matrix: DMatrix<Complex64>,
}

impl SectorMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Largest elementwise deviation `|A - A^dagger|`.
    pub fn hermiticity_error(&self) -> f64 {
        let a = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }
}

/// A two-site coupling `J S_i.S_j + D (S_i x S_j)_z`, sites 0-based.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bond {
    pub i: usize,
    pub j: usize,
    pub exchange: f64,
    pub dmi: f64,
}

/// Open-chain bond list: nearest neighbours carry `J1` and the DMI, next
/// nearest neighbours carry `J2`.
pub(crate) fn bonds(params: &ChainParams) -> Vec<Bond> {
    let n = params.n;
    let nn = (0..n.saturating_sub(1)).map(|i| Bond { i, j: i + 1, exchange: params.j1, dmi: params.d });
    let nnn = (0..n.saturating_sub(2)).map(|i| Bond { i, j: i + 2, exchange: params.j2, dmi: 0.0 });
    nn.chain(nnn).collect()
}

/// Assemble
///
/// ```text
/// H0 = J1 sum_i S_i.S_{i+1} + J2 sum_i S_i.S_{i+2} - sum_i h_i S^z_i + D sum_i (S_i x S_{i+1})_z
/// ```
///
/// sector by sector, with `S = sigma/2` and all sums running over the open
/// chain. Off-diagonal elements come from
/// `S_i.S_j -> (S+_i S-_j + S-_i S+_j)/2` and
/// `(S_i x S_j)_z = (i/2)(S+_i S-_j - S-_i S+_j)`.
pub fn build_hamiltonian(
    params: &ChainParams,
    disorder: &DisorderRealization,
    basis: &BasisIndexing,
) -> Result<Vec<SectorMatrix>> {
    let n = basis.n();
    if params.n != n {
        return Err(Error::Dimension { expected: n, got: params.n });
    }
    if disorder.len() != n {
        return Err(Error::Dimension { expected: n, got: disorder.len() });
    }
    let bonds = bonds(params);

    let sectors = basis
        .sectors()
        .iter()
        .map(|sector| {
            let dim = sector.len();
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            for (col, &state) in sector.states.iter().enumerate() {
                let up = |site: usize| state >> site & 1 == 1;
                let sz = |site: usize| if up(site) { 0.5 } else { -0.5 };

                let mut diag = 0.0;
                for (site, field) in disorder.fields.iter().enumerate() {
                    diag -= field * sz(site);
                }
                for b in &bonds {
                    diag += b.exchange * sz(b.i) * sz(b.j);
                    if up(b.i) == up(b.j) {
                        continue;
                    }
                    let flipped = state ^ (1 << b.i) ^ (1 << b.j);
                    let (_, row) = basis.locate(flipped);
                    // S+_i S-_j acts when i is down and j is up, S-_i S+_j otherwise.
                    let chiral = if up(b.j) { 0.5 * b.dmi } else { -0.5 * b.dmi };
                    m[(row, col)] += Complex64::new(0.5 * b.exchange, chiral);
                }
                m[(col, col)] += Complex64::new(diag, 0.0);
            }
            SectorMatrix { up: sector.up, matrix: m }
        })
        .collect();
    Ok(sectors)
}
