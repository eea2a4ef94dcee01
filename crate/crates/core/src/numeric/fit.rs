use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Ordinary least-squares line `y ≈ intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope (0 when fewer than three points).
    pub slope_stderr: f64,
    pub r2: f64,
    /// Residual standard error `sqrt(SSR / (n - 2))`.
    pub residual_se: f64,
    pub n: usize,
}

pub fn least_squares(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(Error::invalid("fit: x and y differ in length"));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::DegenerateFit("need at least two points".into()));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateFit("non-finite data".into()));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - intercept - slope * a;
            r * r
        })
        .sum();
    let (residual_se, slope_stderr) = if n > 2 {
        let s2 = ssr / (nf - 2.0);
        (s2.sqrt(), (s2 / sxx).sqrt())
    } else {
        (0.0, 0.0)
    };
    let r2 = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    Ok(LinearFit {
        slope,
        intercept,
        slope_stderr,
        r2,
        residual_se,
        n,
    })
}

/// Upper envelope of `(parameter, value)` samples: for each centre `c`, the
/// largest value among samples with `|ln p - ln c| <= half_width`.
///
/// Returns `None` for a centre whose window holds no sample.
pub fn windowed_max(samples: &[(f64, f64)], centers: &[f64], half_width: f64) -> Vec<Option<f64>> {
    centers
        .iter()
        .map(|&c| {
            let lc = c.ln();
            samples
                .iter()
                .filter(|(p, _)| (p.ln() - lc).abs() <= half_width + 1e-12)
                .map(|&(_, v)| v)
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
        })
        .collect()
}

/// Points per octave of [`log_lattice`].
pub const LATTICE_DENSITY: f64 = 4.0;

/// The grid plus a quarter-octave lattice around each grid point reaching
/// `half_width` in `ln y`, capped at 1, in decreasing order.
pub fn log_lattice(grid: &[f64], half_width: f64) -> Vec<f64> {
    let step = std::f64::consts::LN_2 / LATTICE_DENSITY;
    let reach = (half_width / step).floor() as i32;
    let mut hs: Vec<f64> = grid.to_vec();
    for &y in grid {
        for k in -reach..=reach {
            let h = y * (k as f64 * step).exp();
            if h <= 1.0 && !hs.iter().any(|&g| ((g - h) / h).abs() < 1e-9) {
                hs.push(h);
            }
        }
    }
    hs.sort_by(|a, b| b.total_cmp(a));
    hs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_is_recovered() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 0.5 * v).collect();
        let fit = least_squares(&x, &y).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-14);
        assert!((fit.intercept - 3.0).abs() < 1e-13);
        assert!(fit.slope_stderr < 1e-14);
        assert!((fit.r2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn constant_abscissae_are_degenerate() {
        assert!(matches!(
            least_squares(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::DegenerateFit(_))
        ));
    }

    #[test]
    fn constant_ordinates_fit_with_zero_slope() {
        let fit = least_squares(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r2, 1.0);
    }

    #[test]
    fn envelope_picks_window_maximum() {
        let samples = vec![(1.0, 1.0), (2.0, 5.0), (4.0, 2.0), (8.0, 0.5)];
        let env = windowed_max(&samples, &[1.0, 8.0], 2f64.ln());
        assert_eq!(env, vec![Some(5.0), Some(2.0)]);
        assert_eq!(windowed_max(&samples, &[100.0], 0.1), vec![None]);
    }

    #[test]
    fn lattice_contains_grid_and_is_capped() {
        let hs = log_lattice(&[0.5, 0.25], 0.5 * std::f64::consts::LN_2);
        assert!(hs.contains(&0.5) && hs.contains(&0.25));
        assert!(hs.iter().all(|&h| h <= 1.0));
        assert!(hs.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(hs.len(), 9);
    }
}
