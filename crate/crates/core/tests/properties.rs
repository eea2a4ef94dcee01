//! Structural invariants checked over random inputs.

use horolab_core::measures::{FractalMeasure, MeasureExpr, DEFAULT_TAIL_TOL};
use horolab_core::modular::{reduce, ModularPoint, BOUNDARY_TOL};
use horolab_core::numeric::e;
use horolab_core::oscillatory::{find_stationary_points, oscillatory_integral, PhasePolynomial, Window};
use horolab_core::report::{DecayReport, DecayRow, Orientation};
use proptest::prelude::*;

fn fractal() -> impl Strategy<Value = FractalMeasure> {
    (2u32..=12)
        .prop_flat_map(|b| {
            (
                Just(b),
                proptest::sample::subsequence((0..b).collect::<Vec<_>>(), 1..=b as usize),
                -1.0f64..1.0,
            )
        })
        .prop_flat_map(|(b, digits, shift)| {
            let n = digits.len();
            (Just(b), Just(digits), proptest::collection::vec(0.05f64..1.0, n), Just(shift))
        })
        .prop_map(|(b, digits, raw, shift)| {
            let total: f64 = raw.iter().sum();
            let weights = raw.iter().map(|w| w / total).collect();
            FractalMeasure::new(b, digits, weights, shift).unwrap()
        })
}

fn phase() -> impl Strategy<Value = PhasePolynomial> {
    (proptest::collection::vec(-2.0f64..2.0, 2..=4), 0.3f64..2.0)
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            PhasePolynomial::new(c).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_is_normalised_bounded_and_hermitian(mu in fractal(), xi in -500.0f64..500.0) {
        let at_zero = mu.fourier_transform(0.0, DEFAULT_TAIL_TOL);
        prop_assert!((at_zero - 1.0).norm() < 1e-12);
        let v = mu.fourier_transform(xi, DEFAULT_TAIL_TOL);
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        let w = mu.fourier_transform(-xi, DEFAULT_TAIL_TOL);
        prop_assert!((v - w.conj()).norm() < 1e-10);
    }

    #[test]
    fn transform_satisfies_refinement(mu in fractal(), xi in -500.0f64..500.0) {
        let b = mu.base() as f64;
        let lhs = mu.unshifted_transform(xi, 1e-14);
        let rhs = mu.symbol(xi / b) * mu.unshifted_transform(xi / b, 1e-14);
        prop_assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn shift_changes_only_the_phase(mu in fractal(), c in -3.0f64..3.0, xi in -200.0f64..200.0) {
        let m: MeasureExpr = mu.into();
        let base = m.fourier_transform(xi, DEFAULT_TAIL_TOL);
        let moved = m.clone().shifted(c).fourier_transform(xi, DEFAULT_TAIL_TOL);
        prop_assert!((moved.norm() - base.norm()).abs() < 1e-10);
        prop_assert!((moved - e(xi * c) * base).norm() < 1e-9);
    }

    #[test]
    fn sampling_is_reproducible(mu in fractal(), seed in any::<u64>()) {
        let m: MeasureExpr = mu.into();
        prop_assert_eq!(m.sample(20, 300, seed).unwrap(), m.sample(20, 300, seed).unwrap());
    }

    #[test]
    fn reduction_lands_in_the_domain_and_is_idempotent(x in -50.0f64..50.0, ly in -6.0f64..3.0) {
        let z = ModularPoint { x, y: 10f64.powf(ly) };
        let r = reduce(z).unwrap();
        prop_assert!(r.x.abs() <= 0.5 + BOUNDARY_TOL);
        prop_assert!(r.x * r.x + r.y * r.y >= 1.0 - 1e-9);
        prop_assert!(r.y >= z.y * (1.0 - 1e-9));
        let again = reduce(r).unwrap();
        prop_assert!((again.x - r.x).abs() < 1e-9 && (again.y - r.y).abs() < 1e-9 * r.y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn windows_have_unit_mass(f in phase(), c in -2.0f64..2.0, r in 0.1f64..3.0, bump in any::<bool>()) {
        let w = if bump { Window::bump(c, r) } else { Window::raised_cosine(c, r) }.unwrap();
        let mass = oscillatory_integral(&f, &w, 0.0, 1e-12).unwrap().value;
        prop_assert!((mass - 1.0).norm() < 1e-9, "{mass}");
    }

    #[test]
    fn adding_a_constant_rotates_the_transform(f in phase(), c in -5.0f64..5.0, xi in -80.0f64..80.0) {
        let w = Window::raised_cosine(0.2, 1.0).unwrap();
        let base = oscillatory_integral(&f, &w, xi, 1e-11).unwrap().value;
        let moved = oscillatory_integral(&f.shifted(c), &w, xi, 1e-11).unwrap().value;
        prop_assert!((moved - e(xi * c) * base).norm() < 1e-8, "{moved} vs {base}");
    }

    #[test]
    fn stationary_points_are_bounded_by_degree(f in phase(), c in -1.0f64..1.0) {
        let w = Window::raised_cosine(c, 1.5).unwrap();
        if let Ok(data) = find_stationary_points(&f, &w) {
            prop_assert!(data.points.len() < f.degree());
            for p in &data.points {
                prop_assert!(p.k >= 2 && p.k <= f.degree());
            }
        }
    }

    #[test]
    fn exponent_is_reproducible_from_csv(eta in 0.05f64..1.5, noise in proptest::collection::vec(-0.2f64..0.2, 12)) {
        let rows: Vec<DecayRow> = noise
            .iter()
            .enumerate()
            .map(|(k, n)| {
                let y = 0.5f64.powi(k as i32);
                let v = y.powf(eta) * n.exp();
                DecayRow { parameter: y, value: v, error_bar: 0.0, fitted: v }
            })
            .collect();
        let report = DecayReport::fit(Orientation::Height, rows);
        let mut buf = Vec::new();
        horolab_core::experiments::write_csv(&mut buf, &report.rows).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        let parsed: Vec<DecayRow> = reader
            .records()
            .map(|r| {
                let r = r.unwrap();
                let num = |i: usize| r[i].parse::<f64>().unwrap();
                DecayRow { parameter: num(0), value: num(1), error_bar: num(2), fitted: num(3) }
            })
            .collect();
        let refit = DecayReport::fit(Orientation::Height, parsed);
        prop_assert!((refit.exponent.unwrap() - report.exponent.unwrap()).abs() < 1e-9);
    }
}
