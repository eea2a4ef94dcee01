use super::phase::{find_stationary_points, PhasePolynomial, Window};
use crate::automorphic::gamma;
use crate::error::{Error, Result};
use crate::numeric::{e, GaussLegendre};
use crate::report::{DecayReport, DecayRow, FitStatus, Orientation};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest admissible `|ξ|`.
pub const MAX_FREQUENCY: f64 = 1e6;
const MAX_PANELS: usize = 1 << 24;
const NODES: usize = 16;
/// Bisections allowed below the oscillation-resolving partition.
const MAX_REFINE: u32 = 24;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NODES))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    pub value: Complex64,
    /// Sum of the per-panel refinement differences.
    pub error: f64,
    pub panels: usize,
}

/// `∫ e(ξ f(x)) w(x) dx`.
///
/// The support is cut into panels carrying at most one oscillation of
/// `ξf`, each integrated by a 16-point Gauss rule and compared with the
/// rule on its two halves; panels are bisected until the difference meets
/// their share of `tol`.
pub fn oscillatory_integral(f: &PhasePolynomial, w: &Window, xi: f64, tol: f64) -> Result<Transform> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if !xi.is_finite() || xi.abs() > MAX_FREQUENCY {
        return Err(Error::BudgetExceeded(format!("|xi| = {xi:e} exceeds {MAX_FREQUENCY:e}")));
    }
    let (a, b) = w.support();
    let span = b - a;
    let gl = rule();
    let integrand = |x: f64| e(xi * f.eval(x)) * w.eval(x);
    let panel = |lo: f64, hi: f64| -> (Complex64, Complex64, f64) {
        let mid = 0.5 * (lo + hi);
        let coarse: Complex64 = gl.integrate(lo, hi, integrand);
        let fine = gl.integrate(lo, mid, integrand) + gl.integrate(mid, hi, integrand);
        let mass: f64 = gl.integrate(lo, hi, |x| w.eval(x));
        (coarse, fine, mass)
    };
    let min_width = span * 1e-13;
    let mut stack = vec![(a, b, 0u32)];
    let (mut value, mut error, mut panels) = (Complex64::new(0.0, 0.0), 0.0, 0usize);
    while let Some((lo, hi, depth)) = stack.pop() {
        let h = hi - lo;
        let mid = 0.5 * (lo + hi);
        let oscillations = xi.abs() * f.slope_bound(mid, 0.5 * h) * h;
        if oscillations > 1.0 && h > min_width {
            stack.push((mid, hi, 0));
            stack.push((lo, mid, 0));
            continue;
        }
        let (coarse, fine, mass) = panel(lo, hi);
        let diff = (fine - coarse).norm();
        // phases of size |ξf| lose that many ulps in the argument reduction
        let roundoff = 16.0 * f64::EPSILON * (1.0 + (xi * f.eval(mid)).abs()) * mass;
        let local = (tol * h / span).max(roundoff);
        if diff > local && h > min_width && depth < MAX_REFINE {
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
            continue;
        }
        value += fine;
        error += diff;
        panels += 1;
        if panels > MAX_PANELS {
            return Err(Error::BudgetExceeded(format!("more than {MAX_PANELS} panels")));
        }
    }
    Ok(Transform { value, error, panels })
}

/// `∫_ℝ e(λ u^k) du / λ^{−1/k}` for `λ > 0`, with `−λ` handled by conjugation.
fn model_constant(k: usize, positive: bool) -> Complex64 {
    let kf = k as f64;
    let modulus = 2.0 * gamma(Complex64::new(1.0 + 1.0 / kf, 0.0)).re * (2.0 * PI).powf(-1.0 / kf);
    if k % 2 == 0 {
        let phase = if positive { 1.0 } else { -1.0 } / (4.0 * kf);
        e(phase) * modulus
    } else {
        Complex64::new(modulus * (PI / (2.0 * kf)).cos(), 0.0)
    }
}

/// Leading stationary-phase term
/// `Σ_i e(ξ f(x_i)) w(x_i) C_{k_i} (ξ |f^{(k_i)}(x_i)| / k_i!)^{−1/k_i}`.
pub fn stationary_phase_leading(f: &PhasePolynomial, w: &Window, xi: f64) -> Result<Complex64> {
    if !(xi >= 1.0) {
        return Err(Error::invalid(format!("stationary phase needs xi >= 1, got {xi}")));
    }
    let data = find_stationary_points(f, w)?;
    Ok(data
        .points
        .iter()
        .map(|p| {
            let kf = p.k as f64;
            let fact: f64 = (1..=p.k).map(|j| j as f64).product();
            let a = p.f_k / fact;
            let c = model_constant(p.k, a > 0.0);
            e(xi * p.f_value) * c * (w.eval(p.x) * (xi * a.abs()).powf(-1.0 / kf))
        })
        .sum())
}

/// Tolerance used by decay sweeps.
pub const SWEEP_TOL: f64 = 1e-13;

/// One row of a frequency sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub xi: f64,
    pub value: Complex64,
    pub leading: Complex64,
}

/// Transform and leading term over a frequency grid.
pub fn frequency_sweep(f: &PhasePolynomial, w: &Window, grid: &[f64], tol: f64) -> Result<Vec<SweepRow>> {
    grid.par_iter()
        .map(|&xi| {
            let value = oscillatory_integral(f, w, xi, tol)?.value;
            let leading = if xi >= 1.0 { stationary_phase_leading(f, w, xi)? } else { Complex64::new(0.0, 0.0) };
            Ok(SweepRow { xi, value, leading })
        })
        .collect()
}

/// Offsets `2^{j/8}`, `j = −2..=2`, of the local envelope window.
const ENVELOPE_OFFSETS: [i32; 5] = [-2, -1, 0, 1, 2];

/// Exponent above which the decay is reported as superpolynomial.
pub const SUPERPOLYNOMIAL_EXPONENT: f64 = 2.0;

/// Fit `max_{|ln ξ' − ln ξ| ≤ ln 2/4} |∫ e(ξ' f) w| ≈ C ξ^{−β}`.
pub fn exponent_fit_oscillatory(f: &PhasePolynomial, w: &Window, grid: &[f64]) -> Result<DecayReport> {
    let (lo, hi) = grid
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if !(lo > 0.0) || hi / lo < 100.0 * (1.0 - 1e-12) {
        return Err(Error::invalid("frequency grid must be positive and span at least two decades"));
    }
    let rows = grid
        .par_iter()
        .map(|&xi| {
            let samples = ENVELOPE_OFFSETS
                .iter()
                .map(|&j| oscillatory_integral(f, w, xi * 2f64.powf(j as f64 / 8.0), SWEEP_TOL))
                .collect::<Result<Vec<_>>>()?;
            let centre = samples[2];
            let envelope = samples.iter().map(|t| t.value.norm()).fold(0.0, f64::max);
            Ok(DecayRow { parameter: xi, value: centre.value.norm(), error_bar: centre.error, fitted: envelope })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = DecayReport::fit(Orientation::Frequency, rows);
    if report.exponent.is_some_and(|b| b > SUPERPOLYNOMIAL_EXPONENT) {
        report.status = FitStatus::Superpolynomial;
    }
    Ok(report)
}
