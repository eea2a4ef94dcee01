use super::config::{ExperimentConfig, MethodChoice};
use crate::error::Result;
use crate::measures::MeasureExpr;
use crate::modular::{mu_y_value, mx_integral, Estimate, HorocycleConfig, Method, Observable};
use crate::numeric::{derive_seed, log_lattice, windowed_max};
use crate::report::{DecayReport, DecayRow, Orientation};

const REFERENCE_STREAM: u64 = 0x7265;

/// Result of an equidistribution run.
#[derive(Debug, Clone)]
pub struct EquidistributionReport {
    /// `|μ_y(φ) − m_X(φ)|` on the grid, fitted through its local envelope.
    pub decay: DecayReport,
    /// `m_X(φ)` and its standard error (zero when known in closed form).
    pub reference: (f64, f64),
    /// Every height evaluated, with its estimate, in decreasing order of height.
    pub samples: Vec<(f64, Estimate)>,
}

/// Midpoint cells for Lebesgue measure at effective height `h`: enough
/// that the half-resolution rule still resolves every mode above `e^{−16π}`.
fn lebesgue_cells(h: f64) -> usize {
    ((16.0 / h).ceil() as usize).max(1024).next_power_of_two()
}

/// `μ_y(φ)` with the method the configuration asks for.
pub fn measure_at(cfg: &ExperimentConfig, phi: &dyn Observable, y: f64) -> Result<Estimate> {
    let horo = HorocycleConfig::new(cfg.x0, cfg.q, y)?;
    let (method, budget) = match (cfg.method, &cfg.measure) {
        (MethodChoice::Auto, MeasureExpr::Lebesgue) => {
            (Method::Cylinder { tol: cfg.tol }, lebesgue_cells(horo.effective_height()))
        }
        (MethodChoice::Auto | MethodChoice::MonteCarlo, _) => (Method::MonteCarlo, cfg.budget),
        (MethodChoice::Cylinder, _) => (Method::Cylinder { tol: cfg.tol }, cfg.budget),
    };
    mu_y_value(&cfg.measure, phi, &horo, method, budget, cfg.seed)
}

/// `m_X(φ)`: the closed form when available, else Monte Carlo at ten times the budget.
pub fn reference_mean(cfg: &ExperimentConfig, phi: &dyn Observable) -> Result<(f64, f64)> {
    match phi.mean() {
        Some(m) => Ok((m, 0.0)),
        None => mx_integral(phi, (10 * cfg.budget).max(1000), derive_seed(cfg.seed, REFERENCE_STREAM, 0)),
    }
}

/// Measure `|μ_y(φ) − m_X(φ)|` down the height grid and fit `C·y^η` to its
/// upper envelope.
///
/// More than half the rows with error bars at least their value make the
/// report inconclusive; an exponent not clear of zero by two standard
/// errors makes it `no_decay`.
pub fn run_equidistribution(cfg: &ExperimentConfig) -> Result<EquidistributionReport> {
    cfg.validate()?;
    let phi = cfg.test.observable()?;
    let reference = reference_mean(cfg, phi.as_ref())?;
    let grid = cfg.y_grid.heights();
    let half_width = cfg.test.envelope_half_width();
    let samples = log_lattice(&grid, half_width)
        .into_iter()
        .map(|y| Ok((y, measure_at(cfg, phi.as_ref(), y)?)))
        .collect::<Result<Vec<_>>>()?;
    let deviation = |est: &Estimate| (est.value - reference.0).abs();
    let points: Vec<(f64, f64)> = samples.iter().map(|(y, est)| (*y, deviation(est))).collect();
    let envelope = windowed_max(&points, &grid, half_width);
    let rows = grid
        .iter()
        .zip(envelope)
        .map(|(&y, env)| {
            let (_, est) = samples.iter().find(|(h, _)| *h == y).expect("grid heights are sampled");
            let value = deviation(est);
            DecayRow {
                parameter: y,
                value,
                error_bar: est.error.hypot(reference.1),
                fitted: env.unwrap_or(value),
            }
        })
        .collect();
    let decay = DecayReport::fit(Orientation::Height, rows);
    let decay = if 2 * decay.noisy_rows() > decay.rows.len() {
        decay.mark_inconclusive()
    } else {
        decay.require_decay()
    };
    Ok(EquidistributionReport { decay, reference, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::YGrid;
    use crate::report::FitStatus;

    #[test]
    fn escaping_atom_shows_no_decay() {
        let cfg = ExperimentConfig {
            measure: MeasureExpr::Dirac(0.0),
            test: "bump:y0=1,y1=2".parse().unwrap(),
            y_grid: YGrid::new(0.25, 0.5, 6).unwrap(),
            ..Default::default()
        };
        let r = run_equidistribution(&cfg).unwrap();
        assert_ne!(r.decay.status, FitStatus::Ok);
    }

    #[test]
    fn lebesgue_rows_are_the_constant_term() {
        let cfg = ExperimentConfig {
            y_grid: YGrid::new(0.25, 0.5, 5).unwrap(),
            ..Default::default()
        };
        let r = run_equidistribution(&cfg).unwrap();
        let p = crate::automorphic::EisensteinParams::new(1.0).unwrap();
        for row in &r.decay.rows {
            let exact = (p.half_phase() * p.constant_term(row.parameter)).re.abs();
            assert!((row.value - exact).abs() < 1e-9, "{} {} {}", row.parameter, row.value, exact);
        }
    }
}
