//! `K_{it}(x)` for real order `t` and positive argument.
//!
//! Quadrature uses the trapezoid rule on
//! `e^x K_{it}(x) = ∫₀^∞ exp(−x(cosh u − 1)) cos(tu) du`, which converges
//! geometrically for this entire, rapidly decaying integrand. A piecewise
//! Chebyshev table in `ln x` serves repeated evaluations at fixed order.

use crate::error::{Error, Result};
use crate::numeric::ChebyshevSeries;
use serde::Serialize;

/// Beyond this argument `K_{it}(x)` underflows and is reported as 0.
pub const UNDERFLOW_ARG: f64 = 700.0;

/// Truncation point of the scaled integrand, `e^{-41.5} < 1e-18`.
const LOG_CUTOFF: f64 = 41.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KValue {
    pub value: f64,
    /// Set when `x` exceeds [`UNDERFLOW_ARG`] and the value was replaced by 0.
    pub underflow: bool,
}

/// `e^x K_{it}(x)` by the trapezoid rule with step `h`.
pub fn bessel_k_scaled_with_step(t: f64, x: f64, h: f64) -> f64 {
    let umax = (1.0 + LOG_CUTOFF / x).acosh();
    let n = (umax / h).ceil() as usize;
    let mut sum = 0.5;
    for k in 1..=n {
        let u = k as f64 * h;
        // cosh u − 1 = 2 sinh²(u/2) avoids cancellation near 0
        let s = (0.5 * u).sinh();
        sum += (-2.0 * x * s * s).exp() * (t * u).cos();
    }
    sum * h
}

/// Default trapezoid step for argument `x`.
pub fn default_step(x: f64) -> f64 {
    (0.5 / x.sqrt()).min(0.1)
}

/// `e^x K_{it}(x)`.
pub fn bessel_k_scaled(t: f64, x: f64) -> Result<f64> {
    check_argument(t, x)?;
    Ok(bessel_k_scaled_with_step(t, x, default_step(x)))
}

/// `K_{it}(x)`, real by construction.
pub fn bessel_k_imag(t: f64, x: f64) -> Result<KValue> {
    check_argument(t, x)?;
    if x > UNDERFLOW_ARG {
        return Ok(KValue { value: 0.0, underflow: true });
    }
    let scaled = bessel_k_scaled_with_step(t, x, default_step(x));
    Ok(KValue { value: scaled * (-x).exp(), underflow: false })
}

fn check_argument(t: f64, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("K-Bessel argument must be positive, got {x}")));
    }
    if !t.is_finite() {
        return Err(Error::invalid("K-Bessel order must be finite"));
    }
    Ok(())
}

const TABLE_LO: f64 = 1e-4;
const TABLE_HI: f64 = 705.0;
const PIECE_WIDTH: f64 = 0.25;
const PIECE_DEGREE: usize = 32;

/// Piecewise Chebyshev interpolant of `√x e^x K_{it}(x)` in `ln x` on
/// `[1e-4, 705]`, falling back to quadrature below the table.
#[derive(Debug, Clone)]
pub struct KTable {
    t: f64,
    lo: f64,
    pieces: Vec<ChebyshevSeries>,
}

impl KTable {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::invalid("K-Bessel order must be finite"));
        }
        let (lo, hi) = (TABLE_LO.ln(), TABLE_HI.ln());
        let count = ((hi - lo) / PIECE_WIDTH).ceil() as usize;
        let width = (hi - lo) / count as f64;
        let pieces = (0..count)
            .map(|k| {
                let a = lo + k as f64 * width;
                ChebyshevSeries::fit(a, a + width, PIECE_DEGREE, |s| {
                    let x = s.exp();
                    x.sqrt() * bessel_k_scaled_with_step(t, x, default_step(x))
                })
            })
            .collect();
        Ok(KTable { t, lo, pieces })
    }

    pub fn order(&self) -> f64 {
        self.t
    }

    /// Largest Chebyshev tail coefficient over all pieces.
    pub fn tail_magnitude(&self) -> f64 {
        self.pieces.iter().map(|p| p.tail_magnitude()).fold(0.0, f64::max)
    }

    /// `K_{it}(x)`; 0 beyond the underflow horizon.
    pub fn eval(&self, x: f64) -> f64 {
        if x > UNDERFLOW_ARG {
            return 0.0;
        }
        if !(x >= TABLE_LO) {
            return bessel_k_scaled_with_step(self.t, x, default_step(x)) * (-x).exp();
        }
        let s = x.ln();
        let width = self.pieces[0].domain().1 - self.pieces[0].domain().0;
        let idx = (((s - self.lo) / width) as usize).min(self.pieces.len() - 1);
        self.pieces[idx].eval(s) * (-x).exp() / x.sqrt()
    }
}
