//! Deterministic low-discrepancy sample sets.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Radical inverse of `i` in base `b`.
pub fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= b as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// The `i`-th point of the 2-D Halton sequence (bases 2 and 3), `i >= 1`.
pub fn halton2(i: u64) -> (f64, f64) {
    (radical_inverse(i, 2), radical_inverse(i, 3))
}

/// `n` Halton points mapped to the disc of radius `radius` around `center`.
/// `seed` shifts the index so different seeds give disjoint subsequences.
pub fn halton_disc(center: Complex64, radius: f64, n: usize, seed: u64) -> Vec<Complex64> {
    (0..n as u64)
        .map(|k| {
            let (u, v) = halton2(1 + seed.wrapping_mul(7919) + k);
            center + Complex64::from_polar(radius * u.sqrt(), 2.0 * PI * v)
        })
        .collect()
}

/// `n` Halton points as lattice coordinates in `[0, 1)^2`.
pub fn halton_unit_square(n: usize, seed: u64) -> Vec<(f64, f64)> {
    (0..n as u64).map(|k| halton2(1 + seed.wrapping_mul(7919) + k)).collect()
}

/// Default sample center used by the verification routines.
pub const DEFAULT_CENTER: Complex64 = Complex64::new(0.41, 0.27);
/// Default sample radius.
pub const DEFAULT_RADIUS: f64 = 0.3;
