//! Fourier ℓ¹-dimension estimation and the explicit lower bound for
//! arithmetic-progression digit sets.

use super::expr::MeasureExpr;
use super::fractal::{FractalMeasure, DEFAULT_TAIL_TOL};
use crate::error::{Error, Result};
use crate::numeric::{least_squares, LinearFit};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;

/// The threshold `39/64` for the Fourier ℓ¹-dimension.
pub const DIMENSION_THRESHOLD: f64 = 39.0 / 64.0;

/// Default number of θ-shifts in star mode.
pub const DEFAULT_THETA_GRID: usize = 64;

const B_CEILING: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumMode {
    Plain,
    Star,
}

/// Fit of `log S(X)` against `log X`.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionEstimate {
    pub mode: SumMode,
    pub grid: Vec<u64>,
    pub sums: Vec<f64>,
    /// Discretisation error bound of the θ-maximum, per cutoff (zero in plain mode).
    pub theta_error: Vec<f64>,
    /// Slope over the upper half of the grid.
    pub slope: f64,
    pub slope_stderr: f64,
    pub residual_se: f64,
    /// Coefficient of determination of the upper-half fit.
    pub r2: f64,
    /// `1 − slope`.
    pub dimension: f64,
    pub full_grid_slope: f64,
    pub full_grid_dimension: f64,
    /// Set when every partial sum is equal and the slope is trivially 0.
    pub degenerate: bool,
}

/// `Σ_{|m|≤X} |μ̂(m)|`, or in star mode the maximum over `θ = k/θ_grid` of
/// `Σ_{|m|≤X} |μ̂(m+θ)|`.
pub fn l1_partial_sum(m: &MeasureExpr, x: u64, star: bool, theta_grid: usize) -> Result<f64> {
    if x == 0 {
        return Err(Error::invalid("X must be >= 1"));
    }
    Ok(partial_sums(m, &[x], star, theta_grid)?[0])
}

/// Partial sums at every cutoff of an increasing grid, in one pass.
pub fn partial_sums(m: &MeasureExpr, grid: &[u64], star: bool, theta_grid: usize) -> Result<Vec<f64>> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("cutoff grid must be strictly increasing"));
    }
    let Some(&xmax) = grid.last() else {
        return Ok(Vec::new());
    };
    if !star {
        let abs: Vec<f64> = (1..=xmax)
            .into_par_iter()
            .map(|k| m.fourier_transform(k as f64, DEFAULT_TAIL_TOL).norm())
            .collect();
        return Ok(cumulate(grid, |k| 2.0 * abs[k as usize - 1], 1.0));
    }
    if theta_grid == 0 {
        return Err(Error::invalid("theta grid must have at least one point"));
    }
    let mut best = vec![0.0f64; grid.len()];
    for j in 0..theta_grid {
        let theta = j as f64 / theta_grid as f64;
        let abs = |k: i64| m.fourier_transform(k as f64 + theta, DEFAULT_TAIL_TOL).norm();
        let pairs: Vec<f64> = (1..=xmax as i64)
            .into_par_iter()
            .map(|k| abs(k) + abs(-k))
            .collect();
        let sums = cumulate(grid, |k| pairs[k as usize - 1], abs(0));
        for (b, s) in best.iter_mut().zip(sums) {
            *b = b.max(s);
        }
    }
    Ok(best)
}

fn cumulate(grid: &[u64], term: impl Fn(u64) -> f64, start: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = start;
    let mut k = 1;
    for &x in grid {
        while k <= x {
            acc += term(k);
            k += 1;
        }
        out.push(acc);
    }
    out
}

/// Geometric integer grid from `xmin` to `xmax` with `count` distinct points.
pub fn cutoff_grid(xmin: u64, xmax: u64, count: usize) -> Result<Vec<u64>> {
    if xmin == 0 || xmax <= xmin || count < 2 {
        return Err(Error::invalid("cutoff grid needs 1 <= xmin < xmax and count >= 2"));
    }
    let ratio = (xmax as f64 / xmin as f64).powf(1.0 / (count - 1) as f64);
    let mut grid: Vec<u64> = (0..count)
        .map(|k| (xmin as f64 * ratio.powi(k as i32)).round() as u64)
        .collect();
    *grid.last_mut().expect("count >= 2") = xmax;
    grid.dedup();
    Ok(grid)
}

/// Estimate `dim_{ℓ¹}` (or its star variant) from the growth of the partial sums.
pub fn estimate_dim_l1(m: &MeasureExpr, grid: &[u64], star: bool) -> Result<DimensionEstimate> {
    if grid.len() < 4 {
        return Err(Error::invalid("cutoff grid needs at least 4 points"));
    }
    if grid[0] == 0 || (grid[grid.len() - 1] as f64) < 100.0 * grid[0] as f64 {
        return Err(Error::invalid("cutoff grid must span at least two decades"));
    }
    let sums = partial_sums(m, grid, star, DEFAULT_THETA_GRID)?;
    let lx: Vec<f64> = grid.iter().map(|&x| (x as f64).ln()).collect();
    let ls: Vec<f64> = sums.iter().map(|s| s.ln()).collect();
    let full = least_squares(&lx, &ls)?;
    let half = grid.len() / 2;
    let tail: LinearFit = least_squares(&lx[half..], &ls[half..])?;
    let degenerate = sums.iter().all(|&s| s == sums[0]);
    let lipschitz = TAU * m.support_radius();
    let theta_error = grid
        .iter()
        .map(|&x| if star { lipschitz * (2 * x + 1) as f64 / (2.0 * DEFAULT_THETA_GRID as f64) } else { 0.0 })
        .collect();
    Ok(DimensionEstimate {
        mode: if star { SumMode::Star } else { SumMode::Plain },
        grid: grid.to_vec(),
        sums,
        theta_error,
        slope: tail.slope,
        slope_stderr: tail.slope_stderr,
        residual_se: tail.residual_se,
        r2: tail.r2,
        dimension: 1.0 - tail.slope,
        full_grid_slope: full.slope,
        full_grid_dimension: 1.0 - full.slope,
        degenerate,
    })
}

/// `log l / log b − log(4 + log 2l) / log b`.
pub fn cvy_lower_bound(b: u64, l: u64) -> Result<f64> {
    if l < 2 || l > b {
        return Err(Error::invalid(format!("need 2 <= l <= b, got b={b}, l={l}")));
    }
    let (bf, lf) = (b as f64, l as f64);
    Ok((lf.ln() - (4.0 + (2.0 * lf).ln()).ln()) / bf.ln())
}

/// The lower bound for a concrete measure. Digit sets outside arithmetic
/// progressions are refused unless `allow_non_progression` is set.
pub fn cvy_lower_bound_for(mu: &FractalMeasure, allow_non_progression: bool) -> Result<f64> {
    if mu.arithmetic_progression().is_none() && !allow_non_progression {
        return Err(Error::invalid(
            "the bound is established for arithmetic-progression digit sets only",
        ));
    }
    cvy_lower_bound(mu.base() as u64, mu.len() as u64)
}

/// Smallest `b ≥ 3` with `s − log(4+log 2b)/log b > 39/64` and `b − b^s ≥ 2`.
pub fn b_of_s(s: f64) -> Result<u64> {
    if !(s > DIMENSION_THRESHOLD && s < 1.0) {
        return Err(Error::invalid(format!("s = {s} outside (39/64, 1)")));
    }
    (3..=B_CEILING)
        .find(|&b| b_conditions(s, b) == (true, true))
        .ok_or_else(|| Error::NotFound(format!("no b <= {B_CEILING} for s = {s}")))
}

/// Both conditions of [`b_of_s`] evaluated at `b`.
pub fn b_conditions(s: f64, b: u64) -> (bool, bool) {
    let bf = b as f64;
    let gap = s - (4.0 + (2.0 * bf).ln()).ln() / bf.ln() > DIMENSION_THRESHOLD;
    let room = bf - bf.powf(s) >= 2.0;
    (gap, room)
}
