use num_complex::Complex64;

use crate::floquet::StateVector;

/// Apply `exp(-i phi sum_i S^x_i)` as `n` single-site x rotations, in place.
///
/// `amps.len()` must be `2^n`.
pub fn apply_kick_in_place(amps: &mut [Complex64], n: usize, phi: f64) {
    debug_assert_eq!(amps.len(), 1 << n);
    let (s, c) = (0.5 * phi).sin_cos();
    // exp(-i phi sigma_x / 2) = c - i s sigma_x
    let rotate = |a: Complex64, b: Complex64| {
        (
            Complex64::new(c * a.re + s * b.im, c * a.im - s * b.re),
            Complex64::new(s * a.im + c * b.re, c * b.im - s * a.re),
        )
    };
    for site in 0..n {
        let stride = 1usize << site;
        for block in amps.chunks_exact_mut(2 * stride) {
            let (down, up) = block.split_at_mut(stride);
            for (a, b) in down.iter_mut().zip(up.iter_mut()) {
                (*a, *b) = rotate(*a, *b);
            }
        }
    }
}

/// Return the kicked copy of `state`.
pub fn apply_kick(state: &StateVector, phi: f64) -> StateVector {
    let mut out = state.clone();
    apply_kick_in_place(out.amplitudes_mut(), state.n(), phi);
    out
}
