use super::horocycle::{horocycle_point, HorocycleConfig};
use super::observable::Observable;
use super::point::{reduce, ModularPoint};
use crate::error::{Error, Result};
use crate::measures::MeasureExpr;
use crate::numeric::{chunk_ranges, mean_stderr, rng_for};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const MX_STREAM: u64 = 0x6d58;
const MU_STREAM: u64 = 0x6d75;

/// Digits drawn per fractal sample in Monte-Carlo integration.
pub const DEFAULT_SAMPLE_DEPTH: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Method {
    /// Deterministic sum over cylinders, aiming at error `tol`.
    Cylinder { tol: f64 },
    MonteCarlo,
}

/// An integral estimate with its error: a deterministic bound for the
/// cylinder method and a standard error for Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Monte-Carlo integral of `φ` against `m_X`.
///
/// Draws exactly from `(3/π) y^{-2} dx dy` on the fundamental domain:
/// `x = sin θ` with `θ` uniform on `[−π/6, π/6]` carries the marginal
/// `∝ (1 − x²)^{-1/2}`, then `y = √(1 − x²)/(1 − u)`.
pub fn mx_integral(phi: &dyn Observable, n: usize, seed: u64) -> Result<(f64, f64)> {
    if n < 1000 {
        return Err(Error::invalid("m_X integration needs at least 1000 samples"));
    }
    let parts: Vec<Result<(f64, f64)>> = chunk_ranges(n)
        .into_par_iter()
        .enumerate()
        .map(|(i, range)| {
            let mut rng = rng_for(seed, MX_STREAM, i as u64);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in range {
                let theta = (rng.gen::<f64>() - 0.5) * (PI / 3.0);
                let x = theta.sin();
                let u: f64 = rng.gen();
                let y = (1.0 - x * x).sqrt() / (1.0 - u);
                let v = phi.value(ModularPoint { x, y })?;
                s += v;
                s2 += v * v;
            }
            Ok((s, s2))
        })
        .collect();
    let (s, s2) = fold_sums(parts)?;
    Ok(mean_stderr(s, s2, n))
}

fn fold_sums(parts: Vec<Result<(f64, f64)>>) -> Result<(f64, f64)> {
    parts.into_iter().try_fold((0.0, 0.0), |(a, b), p| {
        let (s, s2) = p?;
        Ok((a + s, b + s2))
    })
}

/// `φ` at the reduction of the horocycle point with parameter `x`.
pub fn observe_on_horocycle(phi: &dyn Observable, x: f64, cfg: &HorocycleConfig) -> Result<f64> {
    phi.value(reduce(horocycle_point(x, cfg))?)
}

/// `μ_y(φ) = ∫ φ(n(x0 + x/q) a(y/q)) dμ(x)`.
///
/// A point mass is evaluated exactly by either method. The cylinder
/// method otherwise handles a single leaf:
/// a sum over depth-`L` cylinder midpoints for a fractal leaf, and a
/// `budget`-cell midpoint rule for Lebesgue measure (error estimated
/// from the half-resolution rule).
pub fn mu_y_value(
    m: &MeasureExpr,
    phi: &dyn Observable,
    cfg: &HorocycleConfig,
    method: Method,
    budget: usize,
    seed: u64,
) -> Result<Estimate> {
    if budget == 0 {
        return Err(Error::invalid("budget must be >= 1"));
    }
    if let MeasureExpr::Dirac(x) = m {
        return Ok(Estimate { value: observe_on_horocycle(phi, *x, cfg)?, error: 0.0, evaluations: 1 });
    }
    match method {
        Method::MonteCarlo => monte_carlo(m, phi, cfg, budget, seed),
        Method::Cylinder { tol } => {
            if !(tol > 0.0) {
                return Err(Error::invalid("cylinder tolerance must be positive"));
            }
            cylinder(m, phi, cfg, tol, budget)
        }
    }
}

fn monte_carlo(
    m: &MeasureExpr,
    phi: &dyn Observable,
    cfg: &HorocycleConfig,
    n: usize,
    seed: u64,
) -> Result<Estimate> {
    m.check_depth(DEFAULT_SAMPLE_DEPTH)?;
    let parts: Vec<Result<(f64, f64)>> = chunk_ranges(n)
        .into_par_iter()
        .enumerate()
        .map(|(i, range)| {
            let mut rng = rng_for(seed, MU_STREAM, i as u64);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in range {
                let x = m.draw(&mut rng, DEFAULT_SAMPLE_DEPTH);
                let v = observe_on_horocycle(phi, x, cfg)?;
                s += v;
                s2 += v * v;
            }
            Ok((s, s2))
        })
        .collect();
    let (s, s2) = fold_sums(parts)?;
    let (value, error) = mean_stderr(s, s2, n);
    Ok(Estimate { value, error, evaluations: n })
}

fn cylinder(
    m: &MeasureExpr,
    phi: &dyn Observable,
    cfg: &HorocycleConfig,
    tol: f64,
    budget: usize,
) -> Result<Estimate> {
    match m {
        MeasureExpr::Dirac(x) => Ok(Estimate {
            value: observe_on_horocycle(phi, *x, cfg)?,
            error: 0.0,
            evaluations: 1,
        }),
        MeasureExpr::Lebesgue => {
            let fine = midpoint_rule(phi, cfg, budget)?;
            let coarse = midpoint_rule(phi, cfg, (budget / 2).max(1))?;
            Ok(Estimate { value: fine, error: (fine - coarse).abs(), evaluations: budget })
        }
        MeasureExpr::Fractal(mu) => {
            let lip = phi.lipschitz(cfg.max_reduced_height());
            if !lip.is_finite() {
                return Err(Error::BudgetExceeded(
                    "observable is not Lipschitz; use the montecarlo method".into(),
                ));
            }
            let b = mu.base() as f64;
            let depth = if lip == 0.0 {
                1
            } else {
                ((lip * cfg.q as f64 / (cfg.y * tol)).ln() / b.ln()).ceil().max(1.0) as u32
            };
            let words = (mu.len() as f64).powi(depth as i32);
            if words > budget as f64 {
                return Err(Error::BudgetExceeded(format!(
                    "{words:.3e} cylinders at depth {depth} exceed budget {budget}; use the montecarlo method"
                )));
            }
            let words = words as usize;
            let l = mu.len();
            let width = b.powi(-(depth as i32));
            let parts: Vec<Result<f64>> = chunk_ranges(words)
                .into_par_iter()
                .map(|range| {
                    range
                        .map(|mut w| {
                            let (mut x, mut p, mut scale) = (0.0, 1.0, 1.0);
                            for _ in 0..depth {
                                let k = w % l;
                                w /= l;
                                scale /= b;
                                x += mu.digits()[k] as f64 * scale;
                                p *= mu.weights()[k];
                            }
                            Ok(p * observe_on_horocycle(phi, mu.shift() + x + 0.5 * width, cfg)?)
                        })
                        .sum()
                })
                .collect();
            let value = parts.into_iter().sum::<Result<f64>>()?;
            Ok(Estimate { value, error: lip * width / (2.0 * cfg.y), evaluations: words })
        }
        MeasureExpr::Convolution(_, _) => Err(Error::invalid(
            "cylinder method needs a single leaf; use the montecarlo method",
        )),
    }
}

fn midpoint_rule(phi: &dyn Observable, cfg: &HorocycleConfig, n: usize) -> Result<f64> {
    let h = 1.0 / n as f64;
    let parts: Vec<Result<f64>> = chunk_ranges(n)
        .into_par_iter()
        .map(|range| range.map(|k| observe_on_horocycle(phi, (k as f64 + 0.5) * h, cfg)).sum())
        .collect();
    Ok(parts.into_iter().sum::<Result<f64>>()? * h)
}
