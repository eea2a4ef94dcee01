//! The weight-0 Eisenstein series `E(z, ½+it)` through its Fourier expansion
//! `y^{½+it} + c(t) y^{½−it} + 2κ Σ_{n≥1} λ(n) √y K_{it}(2πny) cos(2πnx)`.

use super::bessel::KTable;
use super::special::{completed_zeta, gamma, zeta};
use crate::error::{Error, Result};
use crate::modular::{ModularPoint, Observable};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

/// Terms kept for reduced points; `e^{−2π(√3/2)·13} < 1e−28`.
pub const DEFAULT_TERMS: usize = 16;

const SERIES_CUTOFF: f64 = 45.0;

/// Largest supported spectral parameter.
pub const MAX_T: f64 = 30.0;

/// `τ_z(m) = Σ_{d | m} d^z`.
pub fn divisor_tau(m: u64, z: Complex64) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::invalid("divisor sums need m >= 1"));
    }
    let pow = |d: u64| (z * (d as f64).ln()).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            sum += pow(d);
            if d * d != m {
                sum += pow(m / d);
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// Spectral data of `E(·, ½+it)` shared by every evaluation.
#[derive(Debug, Clone)]
pub struct EisensteinParams {
    t: f64,
    terms: usize,
    zeta_edge: Complex64,
    scattering: Complex64,
    kappa: Complex64,
    half_phase: Complex64,
    coeffs: Vec<Complex64>,
    table: Arc<KTable>,
}

impl EisensteinParams {
    pub fn new(t: f64) -> Result<Self> {
        Self::with_terms(t, DEFAULT_TERMS)
    }

    pub fn with_terms(t: f64, terms: usize) -> Result<Self> {
        if t == 0.0 || !t.is_finite() || t.abs() > MAX_T {
            return Err(Error::invalid(format!("spectral parameter must satisfy 0 < |t| <= 30, got {t}")));
        }
        if terms < 8 {
            return Err(Error::invalid("series truncation must keep at least 8 terms"));
        }
        let s = Complex64::new(1.0, 2.0 * t);
        let zeta_edge = zeta(s)?;
        let xi_plus = completed_zeta(s)?;
        let xi_minus = completed_zeta(s.conj())?;
        let scattering = xi_minus / xi_plus;
        let kappa = 2.0 * Complex64::from(PI).powc(Complex64::new(0.5, t)) / gamma(Complex64::new(0.5, t));
        let half_phase = Complex64::from_polar(1.0, -0.5 * scattering.arg());
        let mut params = EisensteinParams {
            t,
            terms,
            zeta_edge,
            scattering,
            kappa,
            half_phase,
            coeffs: Vec::new(),
            table: Arc::new(KTable::new(t)?),
        };
        params.coeffs = params.hecke_table(terms);
        Ok(params)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Laplace eigenvalue `1/4 + t²`.
    pub fn eigenvalue(&self) -> f64 {
        0.25 + self.t * self.t
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// `ζ(1 + 2it)`.
    pub fn zeta_edge(&self) -> Complex64 {
        self.zeta_edge
    }

    /// `c(t) = ξ(1 − 2it)/ξ(1 + 2it)`.
    pub fn scattering(&self) -> Complex64 {
        self.scattering
    }

    /// `κ = 2ζ(1+2it)/ξ(1+2it) = 2π^{½+it}/Γ(½+it)`, the factor between
    /// `λ(|m|)√y K_{it}(2π|m|y)` and the coefficient of `e(mx)`.
    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    /// `e^{−iθ/2}` with `c(t) = e^{iθ}`; rotates `E` onto the real axis.
    pub fn half_phase(&self) -> Complex64 {
        self.half_phase
    }

    /// `K_{it}(x)` from the precomputed table.
    pub fn bessel(&self, x: f64) -> f64 {
        self.table.eval(x)
    }

    /// `λ(m) = m^{−it} τ_{2it}(m) / ζ(1+2it)`.
    pub fn hecke(&self, m: u64) -> Result<Complex64> {
        let tau = divisor_tau(m, Complex64::new(0.0, 2.0 * self.t))?;
        Ok(Complex64::from_polar(1.0, -self.t * (m as f64).ln()) * tau / self.zeta_edge)
    }

    /// `λ(1), …, λ(max)` by a divisor sieve.
    pub fn hecke_table(&self, max: usize) -> Vec<Complex64> {
        let mut tau = vec![Complex64::new(0.0, 0.0); max + 1];
        for d in 1..=max {
            let p = Complex64::from_polar(1.0, 2.0 * self.t * (d as f64).ln());
            for k in (d..=max).step_by(d) {
                tau[k] += p;
            }
        }
        (1..=max)
            .map(|m| Complex64::from_polar(1.0, -self.t * (m as f64).ln()) * tau[m] / self.zeta_edge)
            .collect()
    }

    /// Whittaker profile `W(u) = √u K_{it}(2πu)`.
    pub fn whittaker(&self, u: f64) -> f64 {
        u.sqrt() * self.bessel(TAU * u)
    }

    /// `y^{½+it} + c(t) y^{½−it}`.
    pub fn constant_term(&self, y: f64) -> Complex64 {
        let r = y.sqrt();
        let phase = Complex64::from_polar(1.0, self.t * y.ln());
        r * (phase + self.scattering * phase.conj())
    }

    /// The `m`-th Fourier coefficient of `x ↦ E(x + iy)`, which for `m ≠ 0`
    /// is `κ λ(|m|) √y K_{it}(2π|m|y)`.
    pub fn fourier_coefficient(&self, m: i64, y: f64) -> Result<Complex64> {
        if m == 0 {
            return Ok(self.constant_term(y));
        }
        let n = m.unsigned_abs();
        Ok(self.kappa * self.hecke(n)? * y.sqrt() * self.bessel(TAU * n as f64 * y))
    }

    /// `E(z, ½+it)` at a reduced point.
    pub fn value(&self, z: ModularPoint) -> Result<Complex64> {
        if !z.is_reduced() {
            return Err(Error::NotReduced(format!("({}, {})", z.x, z.y)));
        }
        Ok(self.series(z))
    }

    fn series(&self, z: ModularPoint) -> Complex64 {
        let sqrt_y = z.y.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, coeff) in (1..).zip(&self.coeffs) {
            let arg = TAU * n as f64 * z.y;
            // K_{it}(x) < 1e-20 beyond x = 45
            if arg > SERIES_CUTOFF {
                break;
            }
            acc += coeff * (self.bessel(arg) * (TAU * n as f64 * z.x).cos());
        }
        self.constant_term(z.y) + 2.0 * self.kappa * sqrt_y * acc
    }

    /// The real function `e^{−iθ/2} E(z, ½+it)` at a reduced point.
    pub fn symmetric_value(&self, z: ModularPoint) -> Result<f64> {
        Ok((self.half_phase * self.value(z)?).re)
    }
}

pub fn hecke_eis(m: u64, p: &EisensteinParams) -> Result<Complex64> {
    p.hecke(m)
}

pub fn eisenstein_value(z: ModularPoint, p: &EisensteinParams) -> Result<Complex64> {
    p.value(z)
}

pub fn constant_term(y: f64, p: &EisensteinParams) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(Error::invalid("height must be positive"));
    }
    Ok(p.constant_term(y))
}

/// The real-valued Eisenstein observable `e^{−iθ/2} E(·, ½+it)`.
#[derive(Debug, Clone)]
pub struct EisensteinObservable {
    params: EisensteinParams,
}

impl EisensteinObservable {
    pub fn new(t: f64) -> Result<Self> {
        Ok(EisensteinObservable { params: EisensteinParams::new(t)? })
    }

    pub fn from_params(params: EisensteinParams) -> Self {
        EisensteinObservable { params }
    }

    pub fn params(&self) -> &EisensteinParams {
        &self.params
    }
}

impl Observable for EisensteinObservable {
    fn value(&self, z: ModularPoint) -> Result<f64> {
        self.params.symmetric_value(z)
    }

    /// Gradient bound of the constant term, `|½+it|·2√y_max`, plus a unit
    /// allowance for the exponentially small non-constant modes.
    fn lipschitz(&self, y_max: f64) -> f64 {
        let s = Complex64::new(0.5, self.params.t).norm();
        2.0 * s * y_max.max(1.0).sqrt() + 1.0
    }

    fn mean(&self) -> Option<f64> {
        Some(0.0)
    }
}
