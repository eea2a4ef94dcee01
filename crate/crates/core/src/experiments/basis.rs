use super::config::{ExperimentConfig, TestFunction};
use super::equidist::measure_at;
use crate::automorphic::{EisensteinObservable, EisensteinParams};
use crate::error::{Error, Result};
use crate::measures::DEFAULT_TAIL_TOL;
use crate::numeric::e;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Arguments of `K_{it}` beyond which the series is cut.
const BESSEL_CUTOFF: f64 = 45.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisRow {
    pub y: f64,
    pub measured: f64,
    pub error_bar: f64,
    pub series: f64,
    pub discrepancy: f64,
    /// Number of nonzero frequencies in the truncated sum.
    pub terms: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub rows: Vec<BasisRow>,
    pub max_discrepancy: f64,
    /// `max_y discrepancy / √y`.
    pub envelope_constant: f64,
}

/// Truncated expansion of `μ_y(φ)` for the rotated Eisenstein observable
/// `φ = e^{−iθ/2}E`:
/// `Σ_{|m| ≤ Y^{−σ}} a_m(Y) e(m x0) μ̂(m/q)` with `Y = y/q`.
pub fn basis_series(cfg: &ExperimentConfig, p: &EisensteinParams, y: f64) -> Result<(f64, usize)> {
    let q = cfg.q as f64;
    let h = y / q;
    let window = h.powf(-cfg.sigma).floor();
    let reach = (BESSEL_CUTOFF / (TAU * h)).floor();
    let mmax = window.min(reach) as usize;
    let hecke = p.hecke_table(mmax);
    let mu = &cfg.measure;
    let shell: Complex64 = hecke
        .iter()
        .enumerate()
        .map(|(i, lambda)| {
            let m = (i + 1) as f64;
            let coeff = p.kappa() * lambda * (h.sqrt() * p.bessel(TAU * m * h));
            let plus = e(m * cfg.x0) * mu.fourier_transform(m / q, DEFAULT_TAIL_TOL);
            let minus = e(-m * cfg.x0) * mu.fourier_transform(-m / q, DEFAULT_TAIL_TOL);
            coeff * (plus + minus)
        })
        .sum();
    let total = p.half_phase() * (p.constant_term(h) + shell);
    Ok((total.re, mmax))
}

/// Compare `μ_y(φ)` with its truncated Fourier expansion down the grid.
pub fn run_basis_identity_check(cfg: &ExperimentConfig) -> Result<BasisReport> {
    cfg.validate()?;
    let TestFunction::Eisenstein { t } = cfg.test else {
        return Err(Error::invalid("the basis identity needs an eisenstein test function"));
    };
    let p = EisensteinParams::new(t)?;
    let phi = EisensteinObservable::from_params(p.clone());
    let rows = cfg
        .y_grid
        .heights()
        .into_iter()
        .map(|y| {
            let est = measure_at(cfg, &phi, y)?;
            let (series, terms) = basis_series(cfg, &p, y)?;
            Ok(BasisRow {
                y,
                measured: est.value,
                error_bar: est.error,
                series,
                discrepancy: (est.value - series).abs(),
                terms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_discrepancy = rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max);
    let envelope_constant = rows.iter().map(|r| r.discrepancy / r.y.sqrt()).fold(0.0, f64::max);
    Ok(BasisReport { rows, max_discrepancy, envelope_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{MethodChoice, YGrid};
    use crate::measures::MeasureExpr;

    fn cfg(measure: &str, q: u64, x0: f64) -> ExperimentConfig {
        ExperimentConfig {
            measure: measure.parse().unwrap(),
            q,
            x0,
            y_grid: YGrid::new(0.25, 0.5, 5).unwrap(),
            ..Default::default()
        }
    }

    #[test]
    fn lebesgue_reduces_to_constant_term() {
        let r = run_basis_identity_check(&cfg("leb", 1, 0.0)).unwrap();
        assert!(r.max_discrepancy < 1e-6, "{}", r.max_discrepancy);
    }

    #[test]
    fn atom_reduces_to_pointwise_expansion() {
        // σ = 1.2 keeps five terms at y = 1/4, a tail of order e^{−3π}
        let mut c = cfg("dirac:0.3", 1, 0.0);
        c.sigma = 2.0;
        let r = run_basis_identity_check(&c).unwrap();
        assert!(r.max_discrepancy < 1e-6, "{:?}", r.rows);
    }

    #[test]
    fn cantor_discrepancy_is_within_error_bars() {
        let mut c = cfg("cantor:3:0,2", 2, 0.25);
        c.y_grid = YGrid::new(0.1, 0.5, 3).unwrap();
        c.method = MethodChoice::MonteCarlo;
        c.budget = 200_000;
        let r = run_basis_identity_check(&c).unwrap();
        for row in &r.rows {
            assert!(row.discrepancy < 4.0 * row.error_bar + 1e-9, "{row:?}");
        }
        assert!(matches!(c.measure, MeasureExpr::Fractal(_)));
    }

    #[test]
    fn refuses_other_test_functions() {
        let mut c = cfg("leb", 1, 0.0);
        c.test = "bump:y0=1,y1=2".parse().unwrap();
        assert!(run_basis_identity_check(&c).is_err());
    }
}
