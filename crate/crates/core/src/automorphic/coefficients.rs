use super::eisenstein::EisensteinParams;
use crate::error::{Error, Result};
use crate::modular::{observe_on_horocycle, HorocycleConfig, Observable};
use crate::numeric::e;
use crate::report::{DecayReport, DecayRow, Orientation};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

/// `φ̂_y(m) = ∫₀¹ φ(x + iy) e(−mx) dx` by the `n`-point trapezoid rule.
pub fn horocycle_fourier_coeff(phi: &dyn Observable, m: i64, y: f64, n: usize) -> Result<Complex64> {
    if !n.is_power_of_two() || (n as u64) < 4 * m.unsigned_abs() || n < 4 {
        return Err(Error::invalid(format!("quadrature size {n} must be a power of two >= 4|m|")));
    }
    let cfg = unit_horocycle(y)?;
    let h = 1.0 / n as f64;
    let terms: Vec<Result<Complex64>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let x = k as f64 * h;
            Ok(e(-(m as f64) * x) * observe_on_horocycle(phi, x, &cfg)?)
        })
        .collect();
    Ok(terms.into_iter().sum::<Result<Complex64>>()? * h)
}

/// All coefficients `φ̂_y(0), …, φ̂_y(n−1)` from one FFT of `n` samples.
pub fn horocycle_fourier_coeffs(phi: &dyn Observable, y: f64, n: usize) -> Result<Vec<Complex64>> {
    if !n.is_power_of_two() {
        return Err(Error::invalid(format!("FFT size {n} must be a power of two")));
    }
    let cfg = unit_horocycle(y)?;
    let h = 1.0 / n as f64;
    let samples: Vec<Result<Complex64>> = (0..n)
        .into_par_iter()
        .map(|k| observe_on_horocycle(phi, k as f64 * h, &cfg).map(Complex64::from))
        .collect();
    let mut buf = samples.into_iter().collect::<Result<Vec<_>>>()?;
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    Ok(buf.into_iter().map(|c| c * h).collect())
}

fn unit_horocycle(y: f64) -> Result<HorocycleConfig> {
    HorocycleConfig::new(0.0, 1, y)
}

/// The analytic coefficient of the rotated observable `e^{−iθ/2}E`.
pub fn symmetric_coefficient(p: &EisensteinParams, m: i64, y: f64) -> Result<Complex64> {
    Ok(p.half_phase() * p.fourier_coefficient(m, y)?)
}

/// `sup_{1 ≤ |m| ≤ ⌈1/y⌉} |φ̂_y(m)|` for a real observable.
pub fn sup_nonzero_coeff(phi: &dyn Observable, y: f64) -> Result<f64> {
    let mmax = (1.0 / y).ceil() as usize;
    let n = ((16.0 / y).ceil() as usize).max(4 * mmax).next_power_of_two();
    let c = horocycle_fourier_coeffs(phi, y, n)?;
    let floor = 1e-12 * (1.0 + c[0].norm());
    let sup = c[1..=mmax].iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(if sup < floor { 0.0 } else { sup })
}

/// Fit `sup_m |φ̂_y(m)| ≈ C y^{η}` over the height grid.
pub fn spectral_gap_fit(phi: &dyn Observable, y_grid: &[f64]) -> Result<DecayReport> {
    let (lo, hi) = y_grid
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &y| (a.min(y), b.max(y)));
    if y_grid.iter().any(|&y| !(y > 0.0 && y < 1.0)) {
        return Err(Error::invalid("heights must lie in (0, 1)"));
    }
    if hi / lo < 8.0 {
        return Err(Error::invalid("height grid must span at least three dyadic scales"));
    }
    let rows = y_grid
        .iter()
        .map(|&y| {
            let sup = sup_nonzero_coeff(phi, y)?;
            Ok(DecayRow { parameter: y, value: sup, error_bar: 0.0, fitted: sup })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecayReport::fit(Orientation::Height, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphic::EisensteinObservable;
    use crate::modular::Constant;
    use crate::report::FitStatus;

    #[test]
    fn constant_has_no_oscillating_modes() {
        for m in 1..5 {
            assert!(horocycle_fourier_coeff(&Constant(2.0), m, 0.1, 64).unwrap().norm() < 1e-14);
        }
        let r = spectral_gap_fit(&Constant(1.0), &[0.2, 0.1, 0.05, 0.02]).unwrap();
        assert_eq!(r.status, FitStatus::Degenerate);
        assert!(r.rows.iter().all(|row| row.value == 0.0));
    }

    #[test]
    fn quadrature_size_is_validated() {
        assert!(horocycle_fourier_coeff(&Constant(1.0), 5, 0.1, 16).is_err());
        assert!(horocycle_fourier_coeff(&Constant(1.0), 1, 0.1, 24).is_err());
    }

    #[test]
    fn fft_and_trapezoid_agree() {
        let phi = EisensteinObservable::new(1.0).unwrap();
        let all = horocycle_fourier_coeffs(&phi, 0.1, 256).unwrap();
        for m in [0usize, 1, 3, 7] {
            let single = horocycle_fourier_coeff(&phi, m as i64, 0.1, 256).unwrap();
            assert!((single - all[m]).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_mode_is_constant_term() {
        let phi = EisensteinObservable::new(1.0).unwrap();
        let p = phi.params();
        for &y in &[0.2, 0.05] {
            let c0 = horocycle_fourier_coeff(&phi, 0, y, 1024).unwrap();
            let exact = symmetric_coefficient(p, 0, y).unwrap();
            assert!((c0 - exact).norm() < 1e-8, "y={y}: {c0} vs {exact}");
        }
    }
}
