//! End-to-end runs through the public API.

use horolab_core::diophantine::{convergents, khintchine_profile, satisfies_dirichlet, ApproximationFunction};
use horolab_core::experiments::{run_basis_identity_check, run_equidistribution, ExperimentConfig};
use horolab_core::measures::{estimate_dim_l1, cutoff_grid, parse_measure};
use horolab_core::report::FitStatus;
use horolab_core::Error;

#[test]
fn config_file_drives_the_basis_check() {
    let cfg = ExperimentConfig::parse_file(
        "# a Lebesgue run\nmeasure = leb\ntest = eisenstein:t=1\nygrid = 0.25:0.5:4\nbudget = 4096\n",
    )
    .unwrap();
    let report = run_basis_identity_check(&cfg).unwrap();
    assert_eq!(report.rows.len(), 4);
    assert!(report.max_discrepancy < 1e-6, "{}", report.max_discrepancy);
}

#[test]
fn config_errors_name_the_problem() {
    let err = ExperimentConfig::parse_file("measure = leb\nwidth = 3\n").unwrap_err();
    assert!(err.to_string().contains("width"), "{err}");
    let err = ExperimentConfig::parse_file("q = 0\n").unwrap_err();
    assert!(matches!(err, Error::InvalidParameter(_)), "{err:?}");
}

#[test]
fn point_mass_does_not_equidistribute() {
    let cfg = ExperimentConfig::parse_file(
        "measure = dirac:0\ntest = bump:y0=1,y1=3\nygrid = 0.25:0.5:8\n",
    )
    .unwrap();
    let r = run_equidistribution(&cfg).unwrap();
    assert_ne!(r.decay.status, FitStatus::Ok);
}

#[test]
fn cantor_dimension_is_below_one() {
    let m = parse_measure("cantor:3:0,2").unwrap();
    let grid = cutoff_grid(10, 100_000, 9).unwrap();
    let d = estimate_dim_l1(&m, &grid, false).unwrap();
    assert!(d.dimension > 0.3 && d.dimension < 0.9, "{}", d.dimension);
}

#[test]
fn dirichlet_and_khintchine_agree_on_lebesgue() {
    let alpha = std::f64::consts::E;
    let cf = convergents(alpha, 10_000).unwrap();
    assert!(cf.iter().all(|r| satisfies_dirichlet(alpha, r, r.q.max(1))));
    let psi = ApproximationFunction::power(1.0).unwrap();
    let p = khintchine_profile(&parse_measure("leb").unwrap(), &psi, 100, 20_000, 3).unwrap();
    assert!((p.mean_count / p.comparison - 1.0).abs() < 0.2);
}
