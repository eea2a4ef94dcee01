use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Width of the boundary band of the fundamental domain.
pub const BOUNDARY_TOL: f64 = 1e-12;

const STEP_GUARD: usize = 10_000;

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularPoint {
    pub x: f64,
    pub y: f64,
}

/// Generator applied during reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    /// `z ↦ z + n`
    Translate(i64),
    /// `z ↦ −1/z`
    Invert,
}

impl Step {
    pub fn apply(self, z: ModularPoint) -> ModularPoint {
        match self {
            Step::Translate(n) => ModularPoint { x: z.x + n as f64, y: z.y },
            Step::Invert => {
                let r2 = z.x * z.x + z.y * z.y;
                ModularPoint { x: -z.x / r2, y: z.y / r2 }
            }
        }
    }

    /// The step as an element of SL₂(ℤ).
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Step::Translate(n) => [[1, n], [0, 1]],
            Step::Invert => [[0, -1], [1, 0]],
        }
    }
}

/// Product `m_k ⋯ m_1` of a reduction word, so that it maps the input to the output.
pub fn word_matrix(word: &[Step]) -> [[i64; 2]; 2] {
    word.iter().fold([[1, 0], [0, 1]], |acc, s| mat_mul(s.matrix(), acc))
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Möbius action `(az + b)/(cz + d)`.
pub fn mobius(m: [[i64; 2]; 2], z: ModularPoint) -> ModularPoint {
    let z = Complex64::new(z.x, z.y);
    let w = (z * m[0][0] as f64 + m[0][1] as f64) / (z * m[1][0] as f64 + m[1][1] as f64);
    ModularPoint { x: w.re, y: w.im }
}

impl ModularPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() || !x.is_finite() {
            return Err(Error::invalid(format!("({x}, {y}) is not in the upper half-plane")));
        }
        Ok(ModularPoint { x, y })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// In the closed fundamental domain, up to the boundary band.
    pub fn is_reduced(self) -> bool {
        self.x.abs() <= 0.5 + BOUNDARY_TOL && self.x * self.x + self.y * self.y >= 1.0 - BOUNDARY_TOL
    }

    /// Canonical representative in the fundamental domain.
    pub fn reduce(self) -> Result<ModularPoint> {
        reduce(self)
    }
}

pub fn reduce(z: ModularPoint) -> Result<ModularPoint> {
    reduce_with_word(z).map(|(p, _)| p)
}

/// Reduce into `{|x| ≤ 1/2, |z| ≥ 1}` and return the generators applied.
///
/// The representative has `x ∈ (−1/2, 1/2]`, and `x ≤ 0` on the unit arc
/// away from the corner.
pub fn reduce_with_word(z: ModularPoint) -> Result<(ModularPoint, Vec<Step>)> {
    if !(z.y > 0.0) || !z.y.is_finite() || !z.x.is_finite() {
        return Err(Error::invalid(format!("({}, {}) is not in the upper half-plane", z.x, z.y)));
    }
    let mut p = z;
    let mut word = Vec::new();
    for _ in 0..STEP_GUARD {
        let mut n = -p.x.round();
        if p.x + n < -0.5 + BOUNDARY_TOL {
            n += 1.0;
        }
        if n != 0.0 {
            let step = Step::Translate(n as i64);
            p = step.apply(p);
            word.push(step);
        }
        let r2 = p.x * p.x + p.y * p.y;
        let inside = r2 < 1.0 - BOUNDARY_TOL;
        let arc_flip = !inside && r2 <= 1.0 + BOUNDARY_TOL && p.x > 0.0 && p.x < 0.5 - BOUNDARY_TOL;
        if inside || arc_flip {
            p = Step::Invert.apply(p);
            word.push(Step::Invert);
            if arc_flip {
                return Ok((p, word));
            }
            continue;
        }
        return Ok((p, word));
    }
    Err(Error::NonTermination(STEP_GUARD))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ModularPoint, b: ModularPoint, tol: f64) -> bool {
        (a.x - b.x).abs() < tol && (a.y - b.y).abs() < tol
    }

    #[test]
    fn reduction_examples() {
        let p = reduce(ModularPoint { x: 0.3, y: 1.0 }).unwrap();
        assert_eq!(p, ModularPoint { x: 0.3, y: 1.0 });
        let p = reduce(ModularPoint { x: 5.2, y: 2.0 }).unwrap();
        assert!(close(p, ModularPoint { x: 0.2, y: 2.0 }, 1e-12));
    }

    #[test]
    fn word_replays_to_reduced_point() {
        let z = ModularPoint { x: 2.7, y: 0.01 };
        let (p, word) = reduce_with_word(z).unwrap();
        assert!(p.is_reduced());
        let m = word_matrix(&word);
        assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        assert!(close(mobius(m, z), p, 1e-9));
        let replay = word.iter().fold(z, |acc, s| s.apply(acc));
        assert!(close(replay, p, 1e-9));
    }

    #[test]
    fn ties_go_to_canonical_side() {
        let p = reduce(ModularPoint { x: -0.5, y: 3.0 }).unwrap();
        assert_eq!(p.x, 0.5);
        let theta = 1.3f64;
        let p = reduce(ModularPoint { x: theta.cos(), y: theta.sin() }).unwrap();
        assert!(p.x <= 0.0 && p.is_reduced());
        let corner = ModularPoint { x: -0.5, y: 3f64.sqrt() / 2.0 };
        let p = reduce(corner).unwrap();
        assert!(close(p, ModularPoint { x: 0.5, y: corner.y }, 1e-12));
        assert_eq!(reduce(p).unwrap(), p);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(reduce(ModularPoint { x: 0.0, y: -1.0 }).is_err());
        assert!(ModularPoint::new(0.0, 0.0).is_err());
    }
}
