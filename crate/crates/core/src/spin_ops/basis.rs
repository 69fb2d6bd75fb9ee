use crate::error::{Error, Result};

/// Smallest supported chain. A single site carries no couplings but is still
/// a valid (non-interacting) sensor.
pub const MIN_SITES: usize = 1;
/// Largest supported chain. The biggest sector at 14 sites has 3432 states,
/// which keeps dense per-sector diagonalization within a few GB.
pub const MAX_SITES: usize = 14;

/// Basis states with a fixed number of up spins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    /// Number of up spins `k`; the sector has total S_z = k - N/2.
    pub up: usize,
    /// Basis bitstrings in ascending order.
    pub states: Vec<u32>,
}

impl Sector {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Eigenvalue of the total S_z operator on this sector.
    pub fn total_sz(&self, n: usize) -> f64 {
        self.up as f64 - 0.5 * n as f64
    }
}

/// Computational basis of `n` spins split into total-S_z sectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIndexing {
    n: usize,
    sectors: Vec<Sector>,
    position: Vec<u32>,
}

impl BasisIndexing {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        1 << self.n
    }

    /// Sectors ordered by `k = 0..=n`.
    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    /// `(sector k, position within sector)` of a basis bitstring.
    pub fn locate(&self, state: u32) -> (usize, usize) {
        (state.count_ones() as usize, self.position[state as usize] as usize)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerate the 2^n basis states grouped by number of up spins.
pub fn build_basis(n: usize) -> Result<BasisIndexing> {
    if !(MIN_SITES..=MAX_SITES).contains(&n) {
        return Err(Error::Capacity { n, min: MIN_SITES, max: MAX_SITES });
    }
    let mut sectors: Vec<Sector> = (0..=n)
        .map(|up| Sector { up, states: Vec::with_capacity(binomial(n, up)) })
        .collect();
    let mut position = vec![0u32; 1 << n];
    for state in 0..(1u32 << n) {
        let sector = &mut sectors[state.count_ones() as usize];
        position[state as usize] = sector.states.len() as u32;
        sector.states.push(state);
    }
    Ok(BasisIndexing { n, sectors, position })
}
