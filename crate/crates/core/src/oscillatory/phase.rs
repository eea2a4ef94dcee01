use super::exact::{rational, RatPoly};
use crate::error::{Error, Result};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::f64::consts::PI;
use std::str::FromStr;

/// Real polynomial `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePolynomial {
    coeffs: Vec<f64>,
}

impl PhasePolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::invalid("phase must be non-constant"));
        }
        Ok(PhasePolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `f^{(k)}(x)`.
    pub fn derivative_at(&self, k: usize, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(k)
            .rev()
            .fold(0.0, |acc, (j, c)| acc * x + c * falling(j, k))
    }

    /// Bound on `|f'|` over `[m − h, m + h]` from the Taylor expansion at `m`.
    pub(crate) fn slope_bound(&self, m: f64, h: f64) -> f64 {
        let mut acc = 0.0;
        let mut hk = 1.0;
        let mut fact = 1.0;
        for k in 0..self.degree() {
            acc += self.derivative_at(k + 1, m).abs() * hk / fact;
            hk *= h;
            fact *= (k + 1) as f64;
        }
        acc
    }

    /// `f + c`.
    pub fn shifted(&self, c: f64) -> PhasePolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        PhasePolynomial { coeffs }
    }
}

fn falling(j: usize, k: usize) -> f64 {
    ((j - k + 1)..=j).map(|v| v as f64).product()
}

impl FromStr for PhasePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .trim()
            .strip_prefix("poly:")
            .ok_or_else(|| Error::parse("poly", format!("expected poly:<c0>,<c1>,... got '{s}'")))?;
        let coeffs = rest
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::parse("poly", format!("bad coefficient '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        PhasePolynomial::new(coeffs).map_err(|e| Error::parse("poly", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    /// `(1 + cos(π(x − c)/r)) / 2r`
    RaisedCosine,
    /// `exp(−1/(1 − u²))` with `u = (x − c)/r`, normalised numerically.
    Bump,
}

/// Non-negative smooth window of unit mass on `[c − r, c + r]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub kind: WindowKind,
    pub center: f64,
    pub radius: f64,
    scale: f64,
}

/// `∫_{−1}^{1} exp(−1/(1 − u²)) du`.
const BUMP_MASS: f64 = 0.443_993_816_168_079_4;

impl Window {
    pub fn raised_cosine(center: f64, radius: f64) -> Result<Self> {
        Self::build(WindowKind::RaisedCosine, center, radius)
    }

    pub fn bump(center: f64, radius: f64) -> Result<Self> {
        Self::build(WindowKind::Bump, center, radius)
    }

    fn build(kind: WindowKind, center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::invalid(format!("window needs a positive radius, got {radius}")));
        }
        let scale = match kind {
            WindowKind::RaisedCosine => 1.0 / (2.0 * radius),
            WindowKind::Bump => 1.0 / (BUMP_MASS * radius),
        };
        Ok(Window { kind, center, radius, scale })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.radius;
        if u.abs() >= 1.0 {
            return 0.0;
        }
        self.scale
            * match self.kind {
                WindowKind::RaisedCosine => 1.0 + (PI * u).cos(),
                WindowKind::Bump => (-1.0 / (1.0 - u * u)).exp(),
            }
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest, production) = if let Some(r) = s.strip_prefix("coswin:") {
            (WindowKind::RaisedCosine, r, "coswin")
        } else if let Some(r) = s.strip_prefix("bumpwin:") {
            (WindowKind::Bump, r, "bumpwin")
        } else {
            return Err(Error::parse("window", format!("expected coswin:<c>,<r> or bumpwin:<c>,<r>, got '{s}'")));
        };
        let (c, r) = rest
            .split_once(',')
            .ok_or_else(|| Error::parse(production, "expected <center>,<radius>"))?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::parse(production, format!("bad number '{t}'")));
        Window::build(kind, num(c)?, num(r)?).map_err(|e| Error::parse(production, e.to_string()))
    }
}

/// A zero of `f'` of order `k − 1` inside the window support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub x: f64,
    /// First non-vanishing derivative order.
    pub k: usize,
    pub f_value: f64,
    /// `f^{(k)}(x)`.
    pub f_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryData {
    pub points: Vec<StationaryPoint>,
    /// Largest order `k`, or `None` without stationary points.
    pub max_order: Option<usize>,
}

/// Relative distance to the support boundary below which a stationary
/// point is rejected.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Real zeros of `f'` strictly inside the window support, with orders.
pub fn find_stationary_points(f: &PhasePolynomial, w: &Window) -> Result<StationaryData> {
    let exact = RatPoly::from_f64(f.coeffs()).expect("finite coefficients");
    let deriv = exact.derivative();
    let (a, b) = w.support();
    let band = BOUNDARY_TOL * w.radius;
    let lo = rational(a - band).ok_or_else(|| Error::invalid("support endpoint"))?;
    let hi = rational(b + band).ok_or_else(|| Error::invalid("support endpoint"))?;
    let mut points = Vec::new();
    for (factor, mult) in deriv.square_free() {
        let lo = if factor.eval(&lo) == num_traits::Zero::zero() { rational(a - 2.0 * band).expect("finite") } else { lo.clone() };
        for root in factor.isolate_roots(&lo, &hi, 1e-15 * (1.0 + a.abs().max(b.abs()))) {
            let x = root.to_f64().expect("bounded root");
            if (x - a).abs() <= band || (x - b).abs() <= band {
                return Err(Error::BoundaryStationaryPoint(x));
            }
            if x < a || x > b {
                continue;
            }
            let k = mult + 1;
            points.push(StationaryPoint { x, k, f_value: f.eval(x), f_k: f.derivative_at(k, x) });
        }
    }
    points.sort_by(|p, q| p.x.total_cmp(&q.x));
    let max_order = points.iter().map(|p| p.k).max();
    Ok(StationaryData { points, max_order })
}
