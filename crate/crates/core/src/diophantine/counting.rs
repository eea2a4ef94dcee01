use super::psi::ApproximationFunction;
use crate::error::{Error, Result};
use crate::measures::MeasureExpr;
use crate::modular::DEFAULT_SAMPLE_DEPTH;
use crate::numeric::{chunk_ranges, mean_stderr, rng_for};
use rayon::prelude::*;
use serde::Serialize;

const AQ_STREAM: u64 = 0x4171;
const PROFILE_STREAM: u64 = 0x4b68;

/// Distance from `v` to the nearest integer.
pub fn dist_to_integer(v: f64) -> f64 {
    (v - v.round()).abs()
}

/// Monte-Carlo estimate of `μ{x : ‖qx‖ < ψ(q)}` with its standard error.
pub fn measure_of_aq(
    m: &MeasureExpr,
    q: u64,
    psi: &ApproximationFunction,
    n: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if q == 0 {
        return Err(Error::invalid("q must be >= 1"));
    }
    if n < 1000 {
        return Err(Error::invalid("need at least 1000 samples"));
    }
    let radius = psi.eval(q);
    if radius >= 0.5 {
        return Ok((1.0, 0.0));
    }
    m.check_depth(DEFAULT_SAMPLE_DEPTH)?;
    let qf = q as f64;
    let hits: u64 = chunk_ranges(n)
        .into_par_iter()
        .enumerate()
        .map(|(i, range)| {
            let mut rng = rng_for(seed, AQ_STREAM, i as u64);
            range
                .filter(|_| dist_to_integer(qf * m.draw(&mut rng, DEFAULT_SAMPLE_DEPTH)) < radius)
                .count() as u64
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let h = hits as f64;
    Ok(mean_stderr(h, h, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesRegime {
    Divergent,
    Convergent,
}

/// Counting profile `N_x(Q) = #{q ≤ Q : ‖qx‖ < ψ(q)}` over sampled `x`.
#[derive(Debug, Clone, Serialize)]
pub struct KhintchineProfile {
    pub q_max: u64,
    pub samples: usize,
    /// Fraction of samples hit at each `q = 1..=Q`.
    pub hit_rates: Vec<f64>,
    /// `2ψ(q)` for `q = 1..=Q`.
    pub two_psi: Vec<f64>,
    pub mean_count: f64,
    pub mean_count_stderr: f64,
    /// `2 Σ_{q ≤ Q} ψ(q)`.
    pub comparison: f64,
    pub regime: SeriesRegime,
}

impl KhintchineProfile {
    /// `mean_q |rate_q / 2ψ(q) − 1|` over `q ≤ qmax`.
    pub fn mean_relative_deviation(&self, qmax: u64) -> f64 {
        let k = (qmax as usize).min(self.hit_rates.len());
        let total: f64 = self.hit_rates[..k]
            .iter()
            .zip(&self.two_psi)
            .map(|(r, t)| (r / t - 1.0).abs())
            .sum();
        total / k as f64
    }

    /// Mean of `N_x(Q')` for `Q' ≤ Q`, recovered from the per-q rates.
    pub fn mean_count_at(&self, qmax: u64) -> f64 {
        self.hit_rates[..(qmax as usize).min(self.hit_rates.len())].iter().sum()
    }
}

pub fn khintchine_profile(
    m: &MeasureExpr,
    psi: &ApproximationFunction,
    qmax: u64,
    n: usize,
    seed: u64,
) -> Result<KhintchineProfile> {
    if qmax < 10 {
        return Err(Error::invalid("Q must be >= 10"));
    }
    if n < 2 {
        return Err(Error::invalid("need at least 2 samples"));
    }
    m.check_depth(DEFAULT_SAMPLE_DEPTH)?;
    let radii: Vec<f64> = (1..=qmax).map(|q| psi.eval(q)).collect();
    let partials: Vec<(Vec<u64>, f64, f64)> = chunk_ranges(n)
        .into_par_iter()
        .enumerate()
        .map(|(i, range)| {
            let mut rng = rng_for(seed, PROFILE_STREAM, i as u64);
            let mut hits = vec![0u64; radii.len()];
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in range {
                let x = m.draw(&mut rng, DEFAULT_SAMPLE_DEPTH);
                let mut count = 0u64;
                for (k, (&r, h)) in radii.iter().zip(hits.iter_mut()).enumerate() {
                    if dist_to_integer((k + 1) as f64 * x) < r {
                        *h += 1;
                        count += 1;
                    }
                }
                let c = count as f64;
                s += c;
                s2 += c * c;
            }
            (hits, s, s2)
        })
        .collect();
    let mut hits = vec![0u64; radii.len()];
    let (mut s, mut s2) = (0.0, 0.0);
    for (h, a, b) in partials {
        hits.iter_mut().zip(h).for_each(|(t, v)| *t += v);
        s += a;
        s2 += b;
    }
    let (mean_count, mean_count_stderr) = mean_stderr(s, s2, n);
    let regime = match psi.series_diverges() {
        Some(false) => SeriesRegime::Convergent,
        _ => SeriesRegime::Divergent,
    };
    Ok(KhintchineProfile {
        q_max: qmax,
        samples: n,
        hit_rates: hits.iter().map(|&h| h as f64 / n as f64).collect(),
        two_psi: radii.iter().map(|r| 2.0 * r).collect(),
        mean_count,
        mean_count_stderr,
        comparison: 2.0 * radii.iter().sum::<f64>(),
        regime,
    })
}
