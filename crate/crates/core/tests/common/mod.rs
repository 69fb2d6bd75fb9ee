//! Independent reference constructions shared by the integration tests.
//!
//! The dense Hamiltonian here uses the textbook ordering (site 1 is the
//! leftmost Kronecker factor, local index 0 is spin up) and is mapped onto
//! the library's bit convention only at the end, so it shares no code or
//! conventions with the code under test.
#![allow(dead_code)]

use nalgebra::DMatrix;
use pftc_core::{ChainParams, Complex64, DisorderRealization};
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli matrices in the (up, down) ordering.
pub fn paulis() -> [CMat; 3] {
    let x = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let y = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let z = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    [x, y, z]
}

fn kron_chain(factors: &[CMat]) -> CMat {
    factors.iter().fold(CMat::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// `prod_k ops[k]` placed on their sites, identity elsewhere; spin operators
/// are `sigma / 2`.
fn spin_term(n: usize, ops: &[(usize, usize)]) -> CMat {
    let p = paulis();
    let factors: Vec<CMat> = (0..n)
        .map(|site| match ops.iter().find(|(s, _)| *s == site) {
            Some(&(_, axis)) => &p[axis] * c(0.5, 0.0),
            None => CMat::identity(2, 2),
        })
        .collect();
    kron_chain(&factors)
}

/// Physics-ordered index -> library index. In the physics ordering site 1 is
/// the most significant digit and digit 0 means up; the library uses bit
/// `i` for site `i+1` with 1 meaning up.
pub fn to_library_index(n: usize, physics: usize) -> usize {
    (0..n).fold(0, |acc, site| {
        let digit = physics >> (n - 1 - site) & 1;
        acc | ((1 - digit) << site)
    })
}

fn permute(n: usize, m: &CMat) -> CMat {
    let dim = 1 << n;
    let map: Vec<usize> = (0..dim).map(|p| to_library_index(n, p)).collect();
    let mut out = CMat::zeros(dim, dim);
    for r in 0..dim {
        for col in 0..dim {
            out[(map[r], map[col])] = m[(r, col)];
        }
    }
    out
}

/// Term-by-term dense static Hamiltonian in the library ordering.
pub fn oracle_hamiltonian(p: &ChainParams, fields: &[f64]) -> CMat {
    let n = p.n;
    let dim = 1 << n;
    let mut h = CMat::zeros(dim, dim);
    let dot = |i: usize, j: usize| spin_term(n, &[(i, 0), (j, 0)]) + spin_term(n, &[(i, 1), (j, 1)]) + spin_term(n, &[(i, 2), (j, 2)]);
    for i in 0..n - 1 {
        h += dot(i, i + 1) * c(p.j1, 0.0);
        h += (spin_term(n, &[(i, 0), (i + 1, 1)]) - spin_term(n, &[(i, 1), (i + 1, 0)])) * c(p.d, 0.0);
    }
    for i in 0..n.saturating_sub(2) {
        h += dot(i, i + 2) * c(p.j2, 0.0);
    }
    for (i, f) in fields.iter().enumerate() {
        h -= spin_term(n, &[(i, 2)]) * c(*f, 0.0);
    }
    permute(n, &h)
}

pub fn oracle_total_sz(n: usize) -> CMat {
    let dim = 1 << n;
    let sum = (0..n).fold(CMat::zeros(dim, dim), |acc, i| acc + spin_term(n, &[(i, 2)]));
    permute(n, &sum)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Random chain couplings and a disorder draw for oracle comparisons.
pub fn random_chain(rng: &mut impl Rng, n: usize) -> (ChainParams, DisorderRealization) {
    let h = rng.random_range(0.0..8.0);
    let params = ChainParams {
        n,
        j1: rng.random_range(-1.5..1.5),
        j2: rng.random_range(-1.0..1.0),
        d: rng.random_range(-1.0..1.0),
        h,
        phi: rng.random_range(0.0..std::f64::consts::TAU),
        period: rng.random_range(0.3..2.0),
        ..Default::default()
    };
    let disorder = DisorderRealization::generate(n, h, rng.random(), rng.random_range(0..1000));
    (params, disorder)
}

/// Haar-random pure state from a normalized complex Gaussian vector.
pub fn haar_amplitudes(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..1 << n)
        .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}
