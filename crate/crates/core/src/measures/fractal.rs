use crate::error::{Error, Result};
use crate::numeric::e;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{PI, TAU};

/// Default relative tolerance for the truncated product formula.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Self-similar measure of a homogeneous base-`b` IFS `x ↦ (x + d)/b`,
/// digits `d ∈ D` drawn with weights `λ`, translated by `shift`.
///
/// The attractor is the missing-digit Cantor set `K_{b,D}` moved to
/// `[shift, shift + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractalMeasure {
    base: u32,
    digits: Vec<u32>,
    weights: Vec<f64>,
    shift: f64,
    cumulative: Vec<f64>,
    progression: Option<(u32, u32)>,
    uniform: bool,
}

impl FractalMeasure {
    pub fn new(base: u32, digits: Vec<u32>, weights: Vec<f64>, shift: f64) -> Result<Self> {
        if base < 2 {
            return Err(Error::invalid(format!("base must be >= 2, got {base}")));
        }
        if digits.is_empty() {
            return Err(Error::invalid("digit set is empty"));
        }
        if digits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("digits must be strictly increasing"));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::invalid(format!("digit {d} out of range for base {base}")));
        }
        if weights.len() != digits.len() {
            return Err(Error::invalid("weights and digits differ in length"));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::invalid("weights must be positive"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("weights sum to {total}, not 1")));
        }
        if !shift.is_finite() {
            return Err(Error::invalid("shift must be finite"));
        }
        let mut acc = 0.0;
        let cumulative = weights
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect();
        let first = weights[0];
        let uniform = weights.iter().all(|&w| w == first);
        let progression = arithmetic_progression(&digits);
        Ok(FractalMeasure {
            base,
            digits,
            weights,
            shift,
            cumulative,
            progression,
            uniform,
        })
    }

    /// Natural missing-digit measure: uniform weights, no shift.
    pub fn uniform(base: u32, digits: Vec<u32>) -> Result<Self> {
        let l = digits.len().max(1);
        Self::new(base, digits, vec![1.0 / l as f64; l], 0.0)
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// `(first, step)` when the digits form an arithmetic progression.
    pub fn arithmetic_progression(&self) -> Option<(u32, u32)> {
        self.progression
    }

    /// Hausdorff dimension `log l / log b` of the attractor.
    pub fn similarity_dimension(&self) -> f64 {
        (self.len() as f64).ln() / (self.base as f64).ln()
    }

    /// The digit symbol `g(ξ) = Σ λ_i e(d_i ξ)`.
    pub fn symbol(&self, xi: f64) -> Complex64 {
        match (self.progression, self.uniform) {
            (Some((first, step)), true) => {
                let l = self.len() as u64;
                let v = step as f64 * xi;
                let n = v.round();
                let r = v - n;
                let kernel = dirichlet_ratio(l, r);
                // sin(πl(n + r)) / sin(π(n + r)) picks up (-1)^{n(l-1)}
                let odd = (l - 1) % 2 == 1 && (n.abs() % 2.0) == 1.0;
                let sign = if odd { -1.0 } else { 1.0 };
                let phase = e(first as f64 * xi + 0.5 * (l - 1) as f64 * v);
                phase * (sign * kernel)
            }
            _ => self
                .digits
                .iter()
                .zip(&self.weights)
                .map(|(&d, &w)| e(d as f64 * xi) * w)
                .sum(),
        }
    }

    /// Number of product factors needed so the omitted tail stays below `tail_tol`.
    pub fn product_depth(&self, xi: f64, tail_tol: f64) -> usize {
        let a = xi.abs();
        if a == 0.0 {
            return 0;
        }
        let b = self.base as f64;
        let j = ((TAU * b * a / tail_tol).ln() / b.ln()).ceil();
        (j.max(0.0) as usize) + 1
    }

    /// Unshifted transform `Π_{j=1}^{J} g(ξ / b^j)`.
    pub fn unshifted_transform(&self, xi: f64, tail_tol: f64) -> Complex64 {
        let depth = self.product_depth(xi, tail_tol);
        let b = self.base as f64;
        let mut u = xi;
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..depth {
            u /= b;
            acc *= self.symbol(u);
        }
        acc
    }

    /// `μ̂(ξ) = e(ξ x0) Π_{j≥1} g(ξ / b^j)`, truncated with relative tail below `tail_tol`.
    pub fn fourier_transform(&self, xi: f64, tail_tol: f64) -> Complex64 {
        e(xi * self.shift) * self.unshifted_transform(xi, tail_tol)
    }

    /// One draw of `x0 + Σ_{j≤depth} d_j b^{-j}`.
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> f64 {
        let b = self.base as f64;
        let l = self.len();
        let mut acc = 0.0;
        for _ in 0..depth {
            let idx = if self.uniform {
                rng.gen_range(0..l)
            } else {
                let u: f64 = rng.gen();
                self.cumulative.partition_point(|&c| c <= u).min(l - 1)
            };
            acc = (acc + self.digits[idx] as f64) / b;
        }
        self.shift + acc
    }

    /// Digits beyond this depth move a sample by less than 2^-64.
    pub(crate) fn resolvable_depth(&self) -> usize {
        (64.0 * 2f64.ln() / (self.base as f64).ln()).ceil() as usize + 1
    }
}

/// `g(ξ)` for a fractal measure.
pub fn symbol_g(mu: &FractalMeasure, xi: f64) -> Complex64 {
    mu.symbol(xi)
}

/// `sin(π l r) / (l sin(π r))` for `|r| <= 1/2`.
fn dirichlet_ratio(l: u64, r: f64) -> f64 {
    let lf = l as f64;
    if r.abs() < 1e-9 {
        return 1.0 - (lf * lf - 1.0) * PI * PI * r * r / 6.0;
    }
    let lr = lf * r;
    let num = (PI * (lr - lr.round())).sin();
    let num = if (lr.round().abs() % 2.0) == 1.0 { -num } else { num };
    num / (lf * (PI * r).sin())
}

fn arithmetic_progression(digits: &[u32]) -> Option<(u32, u32)> {
    match digits {
        [] => None,
        [d] => Some((*d, 1)),
        [a, b, ..] => {
            let step = b - a;
            digits
                .windows(2)
                .all(|w| w[1] - w[0] == step)
                .then_some((*a, step))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_symbol(mu: &FractalMeasure, xi: f64) -> Complex64 {
        mu.digits
            .iter()
            .zip(&mu.weights)
            .map(|(&d, &w)| Complex64::from_polar(w, TAU * d as f64 * xi))
            .sum()
    }

    #[test]
    fn rejects_invalid_definitions() {
        assert!(FractalMeasure::uniform(1, vec![0]).is_err());
        assert!(FractalMeasure::uniform(3, vec![0, 3]).is_err());
        assert!(FractalMeasure::uniform(3, vec![2, 0]).is_err());
        assert!(FractalMeasure::uniform(3, vec![]).is_err());
        assert!(FractalMeasure::new(3, vec![0, 2], vec![0.5, 0.6], 0.0).is_err());
        assert!(FractalMeasure::new(3, vec![0, 2], vec![1.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn symbol_examples() {
        let cantor = FractalMeasure::uniform(3, vec![0, 2]).unwrap();
        assert!((symbol_g(&cantor, 0.0) - 1.0).norm() < 1e-15);
        assert!(symbol_g(&cantor, 0.25).norm() < 1e-15);

        let full = FractalMeasure::uniform(10, (0..10).collect()).unwrap();
        let direct: Complex64 = (0..10).map(|d| e(d as f64 * 0.37) * 0.1).sum();
        assert!((symbol_g(&full, 0.37) - direct).norm() < 1e-14);
    }

    #[test]
    fn closed_form_symbol_matches_direct_sum() {
        let cases = [
            FractalMeasure::uniform(450, (0..447).collect()).unwrap(),
            FractalMeasure::uniform(7, vec![1, 3, 5]).unwrap(),
            FractalMeasure::uniform(12, vec![2, 5, 8, 11]).unwrap(),
        ];
        for mu in &cases {
            for k in 0..400 {
                let xi = -3.0 + 0.0173 * k as f64;
                let a = mu.symbol(xi);
                let b = direct_symbol(mu, xi);
                assert!((a - b).norm() < 1e-12, "{xi}: {a} vs {b}");
            }
            // integer and near-integer steps exercise the removable singularity
            for &xi in &[1.0, 2.0, 3.0 + 1e-12, -5.0] {
                assert!((mu.symbol(xi) - direct_symbol(mu, xi)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn weighted_symbol_uses_weights() {
        let mu = FractalMeasure::new(4, vec![0, 1, 3], vec![0.5, 0.25, 0.25], 0.0).unwrap();
        assert!(mu.arithmetic_progression().is_none());
        let xi = 0.41;
        assert!((mu.symbol(xi) - direct_symbol(&mu, xi)).norm() < 1e-15);
        assert!(mu.symbol(xi).norm() <= 1.0);
    }

    #[test]
    fn refinement_step_holds() {
        let mu = FractalMeasure::uniform(3, vec![0, 2]).unwrap();
        let tol = 1e-12;
        let xi = 1.7;
        let lhs = mu.unshifted_transform(3.0 * xi, tol);
        let rhs = mu.symbol(xi) * mu.unshifted_transform(xi, tol);
        assert!((lhs - rhs).norm() < 10.0 * tol);
    }

    #[test]
    fn progression_detection() {
        assert_eq!(arithmetic_progression(&[0, 2, 4]), Some((0, 2)));
        assert_eq!(arithmetic_progression(&[3]), Some((3, 1)));
        assert_eq!(arithmetic_progression(&[0, 1, 3]), None);
    }
}
