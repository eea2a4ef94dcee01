//! One function per subcommand, each producing CSV bytes and a summary.

use crate::settings::Settings;
use horolab_core::diophantine::{khintchine_profile, ApproximationFunction};
use horolab_core::automorphic::{spectral_gap_fit, EisensteinObservable};
use horolab_core::experiments::{
    run_basis_identity_check, run_equidistribution, write_csv, ExperimentConfig, Summary, YGrid,
};
use horolab_core::measures::{cutoff_grid, cvy_lower_bound_for, estimate_dim_l1, MeasureExpr, DEFAULT_TAIL_TOL};
use horolab_core::oscillatory::{
    exponent_fit_oscillatory, frequency_sweep, PhasePolynomial, Window, SWEEP_TOL,
};
use horolab_core::report::{DecayReport, FitStatus};
use horolab_core::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

pub struct Outcome {
    pub csv: Vec<u8>,
    pub summary: Summary,
    pub status: FitStatus,
}

impl Outcome {
    fn new<T: Serialize>(rows: &[T], summary: Summary) -> Result<Self> {
        let mut csv = Vec::new();
        write_csv(&mut csv, rows)?;
        Ok(Outcome { csv, summary, status: FitStatus::Ok })
    }

    fn with_report<T: Serialize>(rows: &[T], summary: Summary, report: &DecayReport) -> Result<Self> {
        let mut o = Outcome::new(rows, summary.with_fit(report))?;
        o.status = report.status;
        Ok(o)
    }
}

fn echo(s: &Settings) -> BTreeMap<String, String> {
    s.pairs()
        .filter(|(k, _)| !matches!(k.as_str(), "seed" | "out" | "summary"))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

/// `a:b:step`, inclusive of both ends.
fn arithmetic_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |m: String| Error::Parse { production: "xi", message: m };
    let parts: Vec<f64> = spec
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad(format!("bad number '{t}'"))))
        .collect::<Result<_>>()?;
    let [a, b, step] = parts[..] else {
        return Err(bad(format!("expected start:end:step, got '{spec}'")));
    };
    if !(step > 0.0) || b < a {
        return Err(bad("need start <= end and a positive step".into()));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize + 1;
    if n > 10_000_000 {
        return Err(bad(format!("{n} points is too many")));
    }
    Ok((0..n).map(|k| a + k as f64 * step).collect())
}

/// `lo:hi:count`, log-spaced.
fn log_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |m: String| Error::Parse { production: "xi", message: m };
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad(format!("expected min:max:count, got '{spec}'")));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(format!("bad number '{t}'")));
    let (lo, hi) = (num(lo)?, num(hi)?);
    let n: usize = n.trim().parse().map_err(|_| bad(format!("bad count '{n}'")))?;
    if !(lo > 0.0 && hi > lo) || n < 2 {
        return Err(bad("need 0 < min < max and count >= 2".into()));
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    Ok((0..n).map(|k| lo * (r * k as f64).exp()).collect())
}

#[derive(Serialize)]
struct FourierRow {
    xi: f64,
    re: f64,
    im: f64,
    abs: f64,
}

pub fn fourier(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let m: MeasureExpr = s.literal("measure", "leb")?;
    let grid = arithmetic_grid(&s.raw("xi").unwrap_or_else(|| "0:100:1".into()))?;
    let tol: f64 = s.get("tol", DEFAULT_TAIL_TOL)?;
    s.reject_unused()?;
    let rows: Vec<FourierRow> = grid
        .iter()
        .map(|&xi| {
            let z = m.fourier_transform(xi, tol);
            FourierRow { xi, re: z.re, im: z.im, abs: z.norm() }
        })
        .collect();
    Outcome::new(&rows, Summary::new("fourier", echo(s), seed))
}

#[derive(Serialize)]
struct DimRow {
    x: u64,
    sum: f64,
    theta_error: f64,
}

pub fn dim(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let m: MeasureExpr = s.literal("measure", "cantor:3:0,2")?;
    let xmax: u64 = s.get("xmax", 1_000_000)?;
    let xmin: u64 = s.get("xmin", 10)?;
    let points: usize = s.get("points", 16)?;
    let star: bool = s.get("star", false)?;
    s.reject_unused()?;
    let est = estimate_dim_l1(&m, &cutoff_grid(xmin, xmax, points)?, star)?;
    let rows: Vec<DimRow> = est
        .grid
        .iter()
        .zip(&est.sums)
        .zip(&est.theta_error)
        .map(|((&x, &sum), &theta_error)| DimRow { x, sum, theta_error })
        .collect();
    let mut config = echo(s);
    config.insert("full_grid_dimension".into(), est.full_grid_dimension.to_string());
    if let [mu] = m.fractal_leaves()[..] {
        config.insert("similarity_dimension".into(), mu.similarity_dimension().to_string());
        if let Ok(bound) = cvy_lower_bound_for(mu, false) {
            config.insert("cvy_lower_bound".into(), bound.to_string());
        }
    }
    let mut summary = Summary::new("dim", config, seed);
    summary.exponent = Some(est.dimension);
    summary.stderr = Some(est.slope_stderr);
    summary.r2 = Some(est.r2);
    let mut out = Outcome::new(&rows, summary)?;
    if est.degenerate {
        out.status = FitStatus::Degenerate;
        out.summary.status = FitStatus::Degenerate.as_str().into();
    }
    Ok(out)
}

fn experiment_config(s: &mut Settings, seed: u64) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig { seed, ..Default::default() };
    for key in ["measure", "test", "ygrid", "x0", "q", "method", "budget", "tol", "sigma"] {
        if let Some(v) = s.raw(key) {
            cfg.set(key, &v)?;
        }
    }
    s.reject_unused()?;
    cfg.validate()?;
    Ok(cfg)
}


pub fn equidist(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let cfg = experiment_config(s, seed)?;
    let r = run_equidistribution(&cfg)?;
    let mut config = cfg.echo();
    config.insert("reference".into(), r.reference.0.to_string());
    Outcome::with_report(&r.decay.rows, Summary::new("equidist", config, seed), &r.decay)
}

pub fn basis_check(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let cfg = experiment_config(s, seed)?;
    let r = run_basis_identity_check(&cfg)?;
    let mut config = cfg.echo();
    config.insert("max_discrepancy".into(), r.max_discrepancy.to_string());
    config.insert("envelope_constant".into(), r.envelope_constant.to_string());
    Outcome::new(&r.rows, Summary::new("basis-check", config, seed))
}

pub fn spectral_gap(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let t: f64 = s.get("t", 1.0)?;
    let grid: YGrid = s.literal("ygrid", "0.125:0.5:10")?;
    s.reject_unused()?;
    let phi = EisensteinObservable::new(t)?;
    let report = spectral_gap_fit(&phi, &grid.heights())?;
    Outcome::with_report(&report.rows, Summary::new("spectral-gap", echo(s), seed), &report)
}

#[derive(Serialize)]
struct KhintchineRow {
    q: u64,
    hit_rate: f64,
    two_psi: f64,
}

pub fn khintchine(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let m: MeasureExpr = s.literal("measure", "leb")?;
    let psi: ApproximationFunction = s.literal("psi", "pow:1")?;
    let qmax: u64 = s.get("qmax", 10_000)?;
    let samples: usize = s.get("samples", 10_000)?;
    s.reject_unused()?;
    let p = khintchine_profile(&m, &psi, qmax, samples, seed)?;
    let rows: Vec<KhintchineRow> = (1..)
        .zip(p.hit_rates.iter().zip(&p.two_psi))
        .map(|(q, (&hit_rate, &two_psi))| KhintchineRow { q, hit_rate, two_psi })
        .collect();
    let mut config = echo(s);
    config.insert("mean_count".into(), p.mean_count.to_string());
    config.insert("mean_count_stderr".into(), p.mean_count_stderr.to_string());
    config.insert("comparison".into(), p.comparison.to_string());
    config.insert("mean_relative_deviation".into(), p.mean_relative_deviation(qmax).to_string());
    Outcome::new(&rows, Summary::new("khintchine", config, seed))
}

#[derive(Serialize)]
struct StationaryRow {
    xi: f64,
    re: f64,
    im: f64,
    abs: f64,
    leading_abs: f64,
}

pub fn stationary(s: &mut Settings, seed: u64) -> Result<Outcome> {
    let f: PhasePolynomial = s.literal("phase", "poly:0,0,1")?;
    let w: Window = s.literal("window", "coswin:0,1")?;
    let grid = log_grid(&s.raw("xi").unwrap_or_else(|| "10:10000:13".into()))?;
    s.reject_unused()?;
    let sweep = frequency_sweep(&f, &w, &grid, SWEEP_TOL)?;
    let rows: Vec<StationaryRow> = sweep
        .iter()
        .map(|r| StationaryRow {
            xi: r.xi,
            re: r.value.re,
            im: r.value.im,
            abs: r.value.norm(),
            leading_abs: r.leading.norm(),
        })
        .collect();
    let report = exponent_fit_oscillatory(&f, &w, &grid)?;
    Outcome::with_report(&rows, Summary::new("stationary", echo(s), seed), &report)
}
