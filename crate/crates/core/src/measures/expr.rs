use super::fractal::FractalMeasure;
use crate::error::{Error, Result};
use crate::numeric::{chunk_ranges, e, rng_for};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt;

const SAMPLE_STREAM: u64 = 0x5a4d_504c;

/// Probability measure on ℝ built from fractal, Lebesgue and point-mass
/// leaves combined by convolution.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureExpr {
    Fractal(FractalMeasure),
    /// Lebesgue measure on `[0, 1]`.
    Lebesgue,
    Dirac(f64),
    Convolution(Box<MeasureExpr>, Box<MeasureExpr>),
}

impl From<FractalMeasure> for MeasureExpr {
    fn from(mu: FractalMeasure) -> Self {
        MeasureExpr::Fractal(mu)
    }
}

impl MeasureExpr {
    pub fn convolve(self, other: MeasureExpr) -> MeasureExpr {
        MeasureExpr::Convolution(Box::new(self), Box::new(other))
    }

    /// Translate by `x0`. Fractal leaves absorb the shift; other nodes
    /// are convolved with a point mass.
    pub fn shifted(self, x0: f64) -> MeasureExpr {
        match self {
            MeasureExpr::Fractal(mu) => {
                let s = mu.shift() + x0;
                MeasureExpr::Fractal(mu.with_shift(s))
            }
            MeasureExpr::Dirac(x) => MeasureExpr::Dirac(x + x0),
            other => other.convolve(MeasureExpr::Dirac(x0)),
        }
    }

    /// Smallest `R` with the support inside `[-R, R]`.
    pub fn support_radius(&self) -> f64 {
        let (lo, hi) = self.support_hull();
        lo.abs().max(hi.abs())
    }

    /// Closed interval containing the support.
    pub fn support_hull(&self) -> (f64, f64) {
        match self {
            MeasureExpr::Fractal(mu) => (mu.shift(), mu.shift() + 1.0),
            MeasureExpr::Lebesgue => (0.0, 1.0),
            MeasureExpr::Dirac(x) => (*x, *x),
            MeasureExpr::Convolution(a, b) => {
                let (a0, a1) = a.support_hull();
                let (b0, b1) = b.support_hull();
                (a0 + b0, a1 + b1)
            }
        }
    }

    /// `μ̂(ξ) = ∫ e(ξx) dμ(x)`.
    pub fn fourier_transform(&self, xi: f64, tail_tol: f64) -> Complex64 {
        match self {
            MeasureExpr::Fractal(mu) => mu.fourier_transform(xi, tail_tol),
            MeasureExpr::Lebesgue => lebesgue_transform(xi),
            MeasureExpr::Dirac(x) => e(xi * x),
            MeasureExpr::Convolution(a, b) => {
                a.fourier_transform(xi, tail_tol) * b.fourier_transform(xi, tail_tol)
            }
        }
    }

    /// Fractal leaves in left-to-right order.
    pub fn fractal_leaves(&self) -> Vec<&FractalMeasure> {
        match self {
            MeasureExpr::Fractal(mu) => vec![mu],
            MeasureExpr::Convolution(a, b) => {
                let mut v = a.fractal_leaves();
                v.extend(b.fractal_leaves());
                v
            }
            _ => Vec::new(),
        }
    }

    /// `count` i.i.d. draws, with fractal leaves expanded to `depth` digits.
    ///
    /// Digits finer than 2^-64 are not drawn. Output is identical for any
    /// rayon pool size.
    pub fn sample(&self, depth: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
        self.check_depth(depth)?;
        if count == 0 {
            return Err(Error::invalid("sample count must be >= 1"));
        }
        let chunks: Vec<Vec<f64>> = chunk_ranges(count)
            .into_par_iter()
            .enumerate()
            .map(|(i, range)| {
                let mut rng = rng_for(seed, SAMPLE_STREAM, i as u64);
                range.map(|_| self.draw(&mut rng, depth)).collect()
            })
            .collect();
        Ok(chunks.concat())
    }

    pub(crate) fn check_depth(&self, depth: usize) -> Result<()> {
        if depth == 0 {
            return Err(Error::invalid("depth must be >= 1"));
        }
        for mu in self.fractal_leaves() {
            let scale = (mu.base() as f64).powf(-(depth as f64));
            if !(scale >= f64::MIN_POSITIVE) {
                return Err(Error::PrecisionLoss(format!(
                    "base {} to the power -{depth} underflows",
                    mu.base()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> f64 {
        match self {
            MeasureExpr::Fractal(mu) => mu.draw(rng, depth.min(mu.resolvable_depth())),
            MeasureExpr::Lebesgue => rng.gen::<f64>(),
            MeasureExpr::Dirac(x) => *x,
            MeasureExpr::Convolution(a, b) => a.draw(rng, depth) + b.draw(rng, depth),
        }
    }
}

/// `sin(πx)` with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

fn lebesgue_transform(xi: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    e(0.5 * xi) * (sin_pi(xi) / (PI * xi))
}

impl fmt::Display for MeasureExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureExpr::Fractal(mu) => {
                write!(f, "cantor:{}:", mu.base())?;
                let digits: Vec<String> = mu.digits().iter().map(|d| d.to_string()).collect();
                write!(f, "{}", digits.join(","))?;
                if mu.shift() != 0.0 {
                    write!(f, "+{}", mu.shift())?;
                }
                Ok(())
            }
            MeasureExpr::Lebesgue => write!(f, "leb"),
            MeasureExpr::Dirac(x) => write!(f, "dirac:{x}"),
            MeasureExpr::Convolution(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cantor() -> MeasureExpr {
        FractalMeasure::uniform(3, vec![0, 2]).unwrap().into()
    }

    #[test]
    fn transform_at_zero_is_one() {
        let exprs = [
            cantor(),
            MeasureExpr::Lebesgue,
            MeasureExpr::Dirac(0.7),
            cantor().convolve(MeasureExpr::Lebesgue),
        ];
        for m in &exprs {
            assert!((m.fourier_transform(0.0, 1e-12) - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn lebesgue_vanishes_at_integers() {
        for m in 1..200 {
            assert_eq!(MeasureExpr::Lebesgue.fourier_transform(m as f64, 1e-12).norm(), 0.0);
        }
        let v = MeasureExpr::Lebesgue.fourier_transform(0.5, 1e-12);
        let exact = Complex64::new(0.0, 1.0) * (2.0 / PI);
        assert!((v - exact).norm() < 1e-15);
    }

    #[test]
    fn dirac_samples_exactly() {
        let s = MeasureExpr::Dirac(0.25).sample(5, 3, 7).unwrap();
        assert_eq!(s, vec![0.25, 0.25, 0.25]);
    }

    #[test]
    fn sampling_is_deterministic_and_rejects_underflow() {
        let a = cantor().sample(30, 1000, 11).unwrap();
        let b = cantor().sample(30, 1000, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert!(matches!(cantor().sample(700, 10, 1), Err(Error::PrecisionLoss(_))));
        assert!(cantor().sample(0, 10, 1).is_err());
    }

    #[test]
    fn shift_moves_support() {
        let m = cantor().shifted(0.5);
        assert_eq!(m.support_hull(), (0.5, 1.5));
        let l = MeasureExpr::Lebesgue.shifted(-2.0);
        assert_eq!(l.support_hull(), (-2.0, -1.0));
        let xi = 3.3;
        let lhs = l.fourier_transform(xi, 1e-12);
        let rhs = MeasureExpr::Lebesgue.fourier_transform(xi, 1e-12) * e(-2.0 * xi);
        assert!((lhs - rhs).norm() < 1e-15);
    }
}
