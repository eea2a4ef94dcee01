use super::bessel::UNDERFLOW_ARG;
use super::eisenstein::EisensteinParams;
use crate::error::{Error, Result};
use crate::numeric::{e, log_lattice, windowed_max};
use crate::report::{DecayReport, DecayRow, Orientation};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Largest `n` with `2πny` below the K-Bessel underflow horizon.
fn horizon(y: f64) -> usize {
    (UNDERFLOW_ARG / (TAU * y)).floor() as usize
}

/// Bound on the modes `|m| > y^{−σ}` of `E(· + iy)`:
/// `2|κ| Σ_{m > y^{−σ}} |λ(m)| √y |K_{it}(2πmy)|`, summed up to the underflow horizon.
pub fn truncation_tail_mass(p: &EisensteinParams, y: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 1.0) {
        return Err(Error::invalid(format!("sigma must exceed 1, got {sigma}")));
    }
    if !(y > 0.0 && y < 0.5) {
        return Err(Error::invalid(format!("height must lie in (0, 1/2), got {y}")));
    }
    let start = y.powf(-sigma).floor() as usize + 1;
    let end = horizon(y);
    if start > end {
        return Ok(0.0);
    }
    let lambda = p.hecke_table(end);
    let tail: f64 = (start..=end)
        .map(|m| lambda[m - 1].norm() * p.bessel(TAU * m as f64 * y).abs())
        .sum();
    Ok(2.0 * p.kappa().norm() * y.sqrt() * tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistRegime {
    /// Weights `|m|^{−(½+δ)}`.
    HalfPlusDelta,
    /// Weights `|m|^{−(1+δ)}`.
    OnePlusDelta,
}

/// Parameters of `Σ_{m≠0} λ(|m|) |m|^{−e} W(|m|y) e(mα)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistedSumSpec {
    pub t: f64,
    pub delta: f64,
    pub alpha: f64,
    pub regime: TwistRegime,
}

impl TwistedSumSpec {
    pub fn new(t: f64, delta: f64, alpha: f64, regime: TwistRegime) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::invalid(format!("delta must lie in (0, 1], got {delta}")));
        }
        if !alpha.is_finite() {
            return Err(Error::invalid("alpha must be finite"));
        }
        Ok(TwistedSumSpec { t, delta, alpha, regime })
    }

    pub fn weight_exponent(&self) -> f64 {
        match self.regime {
            TwistRegime::HalfPlusDelta => 0.5 + self.delta,
            TwistRegime::OnePlusDelta => 1.0 + self.delta,
        }
    }
}

/// Direct summation up to the K-Bessel underflow horizon, pairing `±m`.
pub fn twisted_hecke_sum(p: &EisensteinParams, spec: &TwistedSumSpec, y: f64) -> Result<Complex64> {
    if !(y > 0.0 && y < 0.5) {
        return Err(Error::invalid(format!("height must lie in (0, 1/2), got {y}")));
    }
    if p.t() != spec.t {
        return Err(Error::invalid("Eisenstein parameters do not match the spectral parameter"));
    }
    let end = horizon(y);
    let lambda = p.hecke_table(end);
    let ex = spec.weight_exponent();
    let sum: Complex64 = (1..=end)
        .map(|m| {
            let mf = m as f64;
            let twist = e(mf * spec.alpha) + e(-mf * spec.alpha);
            lambda[m - 1] * twist * (mf.powf(-ex) * p.whittaker(mf * y))
        })
        .sum();
    Ok(sum)
}

/// Twisted sums down the height grid, fitted as `C·y^η` through the upper
/// envelope over windows of half a period of `y^{it}` in `ln y`, sampled on a
/// quarter-octave lattice below `1/2`.
pub fn twisted_sum_decay(spec: &TwistedSumSpec, y_grid: &[f64]) -> Result<(Vec<(f64, Complex64)>, DecayReport)> {
    let p = EisensteinParams::new(spec.t)?;
    let half_width = PI / (2.0 * spec.t);
    let values = log_lattice(y_grid, half_width)
        .into_iter()
        .filter(|&y| y < 0.5)
        .map(|y| Ok((y, twisted_hecke_sum(&p, spec, y)?)))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = values.iter().map(|&(y, v)| (y, v.norm())).collect();
    let envelope = windowed_max(&points, y_grid, half_width);
    let rows = y_grid
        .iter()
        .zip(envelope)
        .map(|(&y, env)| {
            let v = twisted_hecke_sum(&p, spec, y)?.norm();
            Ok(DecayRow { parameter: y, value: v, error_bar: 0.0, fitted: env.unwrap_or(v) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((values, DecayReport::fit(Orientation::Height, rows)))
}
