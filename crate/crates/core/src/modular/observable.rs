use super::point::ModularPoint;
use crate::error::{Error, Result};
use crate::numeric::GaussLegendre;
use std::f64::consts::PI;

/// A K-invariant function on the modular surface.
pub trait Observable: Send + Sync {
    /// Value at a point of the fundamental domain.
    fn value(&self, z: ModularPoint) -> Result<f64>;

    /// Hyperbolic Lipschitz constant on the part of the domain below `y_max`.
    fn lipschitz(&self, y_max: f64) -> f64;

    /// Exact `m_X` mean, when available.
    fn mean(&self) -> Option<f64>;
}

/// The constant function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl Observable for Constant {
    fn value(&self, _z: ModularPoint) -> Result<f64> {
        Ok(self.0)
    }
    fn lipschitz(&self, _y_max: f64) -> f64 {
        0.0
    }
    fn mean(&self) -> Option<f64> {
        Some(self.0)
    }
}

/// Smooth bump `exp(1 − 1/(1 − u²))` in the height coordinate, with `u`
/// the position of `y` in `(y0, y1)` rescaled to `(−1, 1)`. Peak value 1.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightBump {
    y0: f64,
    y1: f64,
    lipschitz: f64,
    mean: f64,
}

impl HeightBump {
    pub fn new(y0: f64, y1: f64) -> Result<Self> {
        if !(y0 > 0.0 && y1 > y0 && y1.is_finite()) {
            return Err(Error::invalid(format!("bump needs 0 < y0 < y1, got {y0}, {y1}")));
        }
        let slope = (0..=4000)
            .map(|k| {
                let u = -1.0 + k as f64 / 2000.0;
                bump_profile_derivative(u).abs()
            })
            .fold(0.0, f64::max);
        let lipschitz = slope * 2.0 / (y1 - y0) * y1;
        let mut b = HeightBump { y0, y1, lipschitz, mean: 0.0 };
        b.mean = height_integral(|y| b.at_height(y), y0, y1);
        Ok(b)
    }

    pub fn at_height(&self, y: f64) -> f64 {
        let u = (2.0 * y - self.y0 - self.y1) / (self.y1 - self.y0);
        bump_profile(u)
    }
}

fn bump_profile(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

fn bump_profile_derivative(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        let d = 1.0 - u * u;
        bump_profile(u) * (-2.0 * u / (d * d))
    }
}

impl Observable for HeightBump {
    fn value(&self, z: ModularPoint) -> Result<f64> {
        Ok(self.at_height(z.y))
    }
    fn lipschitz(&self, _y_max: f64) -> f64 {
        self.lipschitz
    }
    fn mean(&self) -> Option<f64> {
        Some(self.mean)
    }
}

/// Indicator of `{y > c}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightIndicator {
    pub threshold: f64,
}

impl HeightIndicator {
    pub fn new(threshold: f64) -> Result<Self> {
        if !threshold.is_finite() {
            return Err(Error::invalid("indicator threshold must be finite"));
        }
        Ok(HeightIndicator { threshold })
    }
}

impl Observable for HeightIndicator {
    fn value(&self, z: ModularPoint) -> Result<f64> {
        Ok(if z.y > self.threshold { 1.0 } else { 0.0 })
    }
    fn lipschitz(&self, _y_max: f64) -> f64 {
        f64::INFINITY
    }
    fn mean(&self) -> Option<f64> {
        // (3/π) ∫ dx / max(c, √(1 − x²)) over |x| ≤ 1/2
        let c = self.threshold;
        let gl = GaussLegendre::new(32);
        let f = |x: f64| 1.0 / c.max((1.0 - x * x).sqrt());
        let mut cuts = vec![0.0, 0.5];
        if c > 0.0 && c < 1.0 {
            let k = (1.0 - c * c).sqrt();
            if k < 0.5 {
                cuts.insert(1, k);
            }
        }
        let half: f64 = cuts.windows(2).map(|w| gl.integrate(w[0], w[1], f)).sum();
        Some(3.0 / PI * 2.0 * half)
    }
}

/// `m_X` mean of a function of the height supported in `[lo, hi]`.
fn height_integral(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let gl = GaussLegendre::new(32);
    let inner = |a: f64| {
        let a = a.max(lo);
        if a >= hi {
            return 0.0;
        }
        let panels = 16;
        let h = (hi - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let s = a + k as f64 * h;
                gl.integrate(s, s + h, |y| f(y) / (y * y))
            })
            .sum::<f64>()
    };
    let outer: f64 = (0..8)
        .map(|k| {
            let s = k as f64 / 16.0;
            gl.integrate(s, s + 1.0 / 16.0, |x| inner((1.0 - x * x).sqrt()))
        })
        .sum();
    3.0 / PI * 2.0 * outer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_mean_closed_form() {
        let ind = HeightIndicator::new(2.0).unwrap();
        assert!((ind.mean().unwrap() - 3.0 / (2.0 * PI)).abs() < 1e-14);
        assert!((HeightIndicator::new(0.5).unwrap().mean().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn height_integral_of_indicator_matches() {
        let v = height_integral(|_| 1.0, 2.0, 4.0);
        assert!((v - 3.0 / (4.0 * PI)).abs() < 1e-13);
        let w = height_integral(|_| 1.0, 0.5, 1.0);
        let full = 1.0 - HeightIndicator::new(1.0).unwrap().mean().unwrap();
        assert!((w - full).abs() < 1e-6);
    }

    #[test]
    fn bump_is_bounded_and_vanishes_outside() {
        let b = HeightBump::new(1.5, 3.0).unwrap();
        assert_eq!(b.at_height(2.25), 1.0);
        assert_eq!(b.at_height(1.4), 0.0);
        assert!(b.lipschitz(10.0) > 0.0);
        let m = b.mean().unwrap();
        assert!(m > 0.0 && m < 3.0 / (1.5 * PI));
    }
}
