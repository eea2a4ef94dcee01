//! ζ on `Re s ≥ 1` by Euler–Maclaurin, complex log-Γ by a Lanczos sum, and
//! the completed zeta function.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

const BERNOULLI_TERMS: usize = 20;

/// `B_{2k} / (2k)!` for `k = 1..=20`.
fn bernoulli_ratios() -> &'static [f64; BERNOULLI_TERMS] {
    static TABLE: OnceLock<[f64; BERNOULLI_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 2 * BERNOULLI_TERMS;
        // Akiyama–Tanigawa in exact arithmetic
        let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
        let mut bern = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
            }
            bern.push(a[0].clone());
        }
        let mut out = [0.0; BERNOULLI_TERMS];
        let mut fact = BigRational::one();
        let mut k = 0u64;
        for (i, slot) in out.iter_mut().enumerate() {
            let target = 2 * (i as u64 + 1);
            while k < target {
                k += 1;
                fact *= BigRational::from_integer(BigInt::from(k));
            }
            *slot = (&bern[target as usize] / &fact).to_f64().unwrap_or(0.0);
        }
        out
    })
}

/// Riemann ζ for `Re s ≥ 1`, `s ≠ 1`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s.re < 1.0 {
        return Err(Error::invalid(format!("zeta needs Re s >= 1, got {s}")));
    }
    if (s - 1.0).norm() < 1e-6 {
        return Err(Error::NearPole((s - 1.0).norm()));
    }
    let n = (50.0 + s.norm()).ceil() as u64;
    let nf = n as f64;
    let mut sum = Complex64::zero();
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // Σ B_{2k}/(2k)! · s(s+1)⋯(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut power = n_pow / nf;
    for (k, &b) in bernoulli_ratios().iter().enumerate() {
        let term = rising * power * b;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        power /= nf * nf;
    }
    Ok(sum)
}

const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// `log Γ(z)` on a branch continuous in the right half-plane.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1−z) = π / sin(πz)
        return Complex64::from(PI.ln()) - (z * PI).sin().ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let a = LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::from(LANCZOS[0]), |acc, (k, &c)| acc + c / (z + (k + 1) as f64));
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Completed zeta `ξ(u) = π^{−u/2} Γ(u/2) ζ(u)` for `Re u ≥ 1`.
pub fn completed_zeta(u: Complex64) -> Result<Complex64> {
    let log_factor = -u * 0.5 * PI.ln() + ln_gamma(u * 0.5);
    Ok(log_factor.exp() * zeta(u)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_ratios_start_correctly() {
        let b = bernoulli_ratios();
        assert!((b[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((b[1] + 1.0 / 720.0).abs() < 1e-18);
        assert!((b[2] - 1.0 / 30240.0).abs() < 1e-19);
    }

    #[test]
    fn zeta_two_and_pole() {
        let z2 = zeta(Complex64::new(2.0, 0.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14 && z2.im.abs() < 1e-15);
        let z4 = zeta(Complex64::new(4.0, 0.0)).unwrap();
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!(matches!(zeta(Complex64::new(1.0 + 1e-8, 0.0)), Err(Error::NearPole(_))));
        assert!(zeta(Complex64::new(0.5, 1.0)).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(Complex64::from(5.0)) - 24.0).norm() < 1e-12);
        assert!((gamma(Complex64::from(0.5)) - PI.sqrt()).norm() < 1e-14);
        for &t in &[0.5, 1.0, 7.0, 30.0] {
            let g = gamma(Complex64::new(0.5, t));
            let expect = PI / (PI * t).cosh();
            assert!((g.norm_sqr() / expect - 1.0).abs() < 1e-12, "t={t}");
        }
        // recurrence Γ(z+1) = zΓ(z) for complex z, including the reflected region
        for z in [Complex64::new(0.3, 2.0), Complex64::new(-1.7, 0.4), Complex64::new(3.0, -20.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs / rhs - 1.0).norm() < 1e-12, "{z}");
        }
    }
}
