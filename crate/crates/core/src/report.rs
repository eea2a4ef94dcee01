//! Power-law decay tables and their log-log fits.

use crate::error::Result;
use crate::numeric::least_squares;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRow {
    pub parameter: f64,
    pub value: f64,
    pub error_bar: f64,
    /// The quantity entering the fit: `value` itself or a local envelope of it.
    pub fitted: f64,
}

/// Which way the parameter goes to its limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `value ≈ C·p^η` as `p → 0`; the exponent is the log-log slope.
    Height,
    /// `value ≈ C·p^{−β}` as `p → ∞`; the exponent is minus the slope.
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitStatus {
    Ok,
    /// Error bars swamp the signal; no exponent is reported.
    Inconclusive,
    /// The fitted exponent is not significantly positive.
    NoDecay,
    /// Too few positive values to fit.
    Degenerate,
    /// Decay faster than any rate a power law of small degree describes.
    Superpolynomial,
}

impl FitStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FitStatus::Ok => "ok",
            FitStatus::Inconclusive => "inconclusive",
            FitStatus::NoDecay => "no_decay",
            FitStatus::Degenerate => "degenerate",
            FitStatus::Superpolynomial => "superpolynomial",
        }
    }
}

/// Table of `(parameter, value)` pairs with a fitted power-law exponent.
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub orientation: Orientation,
    pub rows: Vec<DecayRow>,
    pub exponent: Option<f64>,
    pub stderr: Option<f64>,
    pub r2: Option<f64>,
    /// Exponent of a fit on the raw values, for comparison with an envelope fit.
    pub pointwise_exponent: Option<f64>,
    pub status: FitStatus,
}

impl DecayReport {
    /// Sort the rows by parameter and fit `ln fitted` against `ln parameter`.
    pub fn fit(orientation: Orientation, mut rows: Vec<DecayRow>) -> Self {
        rows.sort_by(|a, b| a.parameter.total_cmp(&b.parameter));
        let sign = match orientation {
            Orientation::Height => 1.0,
            Orientation::Frequency => -1.0,
        };
        let main = log_fit(&rows, |r| r.fitted);
        let pointwise = log_fit(&rows, |r| r.value).map(|f| sign * f.0);
        match main {
            Some((slope, se, r2)) => DecayReport {
                orientation,
                rows,
                exponent: Some(sign * slope),
                stderr: Some(se),
                r2: Some(r2),
                pointwise_exponent: pointwise,
                status: FitStatus::Ok,
            },
            None => DecayReport {
                orientation,
                rows,
                exponent: None,
                stderr: None,
                r2: None,
                pointwise_exponent: pointwise,
                status: FitStatus::Degenerate,
            },
        }
    }

    /// Downgrade to [`FitStatus::NoDecay`] unless `exponent − 2·stderr > 0`.
    pub fn require_decay(mut self) -> Self {
        if self.status == FitStatus::Ok {
            if let (Some(e), Some(se)) = (self.exponent, self.stderr) {
                if e - 2.0 * se <= 0.0 {
                    self.status = FitStatus::NoDecay;
                }
            }
        }
        self
    }

    /// Withdraw the exponent and mark the report inconclusive.
    pub fn mark_inconclusive(mut self) -> Self {
        self.status = FitStatus::Inconclusive;
        self.exponent = None;
        self.stderr = None;
        self.r2 = None;
        self
    }

    /// Number of rows whose error bar is at least the observed value.
    pub fn noisy_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.error_bar >= r.value.abs()).count()
    }
}

fn log_fit(rows: &[DecayRow], f: impl Fn(&DecayRow) -> f64) -> Option<(f64, f64, f64)> {
    let (x, y): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.parameter > 0.0 && f(r) > 0.0 && f(r).is_finite())
        .map(|r| (r.parameter.ln(), f(r).ln()))
        .unzip();
    if x.len() < 3 {
        return None;
    }
    let fit: Result<_> = least_squares(&x, &y);
    fit.ok().map(|f| (f.slope, f.slope_stderr, f.r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(f: impl Fn(f64) -> f64, params: &[f64]) -> Vec<DecayRow> {
        params
            .iter()
            .map(|&p| DecayRow { parameter: p, value: f(p), error_bar: 0.0, fitted: f(p) })
            .collect()
    }

    #[test]
    fn recovers_exponents_in_both_orientations() {
        let ys = [0.5, 0.25, 0.125, 0.0625];
        let r = DecayReport::fit(Orientation::Height, rows(|y| 3.0 * y.powf(0.4), &ys));
        assert!((r.exponent.unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(r.rows[0].parameter, 0.0625);
        let xs = [10.0, 100.0, 1000.0];
        let r = DecayReport::fit(Orientation::Frequency, rows(|x| x.powf(-0.5), &xs));
        assert!((r.exponent.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_values_are_degenerate() {
        let r = DecayReport::fit(Orientation::Height, rows(|_| 0.0, &[0.1, 0.2, 0.3]));
        assert_eq!(r.status, FitStatus::Degenerate);
        assert!(r.exponent.is_none());
    }

    #[test]
    fn flat_series_has_no_decay() {
        let noisy = |y: f64| 1.0 + 0.01 * (1.0 / y).sin();
        let r = DecayReport::fit(Orientation::Height, rows(noisy, &[0.5, 0.25, 0.125, 0.0625]))
            .require_decay();
        assert_eq!(r.status, FitStatus::NoDecay);
    }
}
