//! Shared numerical plumbing: additive characters, least-squares fits,
//! Gauss–Legendre rules, Chebyshev interpolation and deterministic seeding.

mod chebyshev;
mod fit;
mod gauss;
mod rng;

pub use chebyshev::ChebyshevSeries;
pub use fit::{least_squares, log_lattice, windowed_max, LinearFit, LATTICE_DENSITY};
pub use gauss::GaussLegendre;
pub use rng::{chunk_ranges, derive_seed, rng_for, MC_CHUNK};

use num_complex::Complex64;
use std::f64::consts::TAU;

/// The additive character `e(x) = exp(2πix)`, with the argument reduced mod 1
/// before the trigonometric evaluation.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// Geometric grid `start, start·ratio, …` with `count` points.
pub fn geometric_grid(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

/// Mean and standard error of a sample given its running sums.
pub(crate) fn mean_stderr(sum: f64, sum_sq: f64, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let mean = sum / nf;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (mean, (var / nf).sqrt())
}
