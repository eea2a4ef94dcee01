use super::point::ModularPoint;
use crate::error::{Error, Result};
use serde::Serialize;

/// Base point `n(x0) a(1/q)` and height `y` of a horocycle segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorocycleConfig {
    pub x0: f64,
    pub q: u64,
    pub y: f64,
}

impl HorocycleConfig {
    pub fn new(x0: f64, q: u64, y: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("q must be >= 1"));
        }
        if !(y > 0.0 && y <= 1.0) {
            return Err(Error::invalid(format!("height {y} outside (0, 1]")));
        }
        if !x0.is_finite() {
            return Err(Error::invalid("x0 must be finite"));
        }
        Ok(HorocycleConfig { x0, q, y })
    }

    pub fn at_height(self, y: f64) -> Result<Self> {
        Self::new(self.x0, self.q, y)
    }

    /// Imaginary part `y/q` of every point on the segment.
    pub fn effective_height(&self) -> f64 {
        self.y / self.q as f64
    }

    /// Largest height of a reduced point reachable from the segment.
    pub fn max_reduced_height(&self) -> f64 {
        let h = self.effective_height();
        h.max(1.0 / h)
    }
}

/// The unreduced point `(x0 + x/q, y/q)`.
pub fn horocycle_point(x: f64, cfg: &HorocycleConfig) -> ModularPoint {
    let q = cfg.q as f64;
    ModularPoint { x: cfg.x0 + x / q, y: cfg.y / q }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_formula() {
        let cfg = HorocycleConfig::new(0.0, 1, 0.01).unwrap();
        assert_eq!(horocycle_point(0.4, &cfg), ModularPoint { x: 0.4, y: 0.01 });
        let cfg = HorocycleConfig::new(0.25, 2, 0.01).unwrap();
        assert_eq!(horocycle_point(0.5, &cfg), ModularPoint { x: 0.5, y: 0.005 });
        let cfg = HorocycleConfig::new(1.0 / 3.0, 3, 1e-4).unwrap();
        let x = std::f64::consts::PI - 3.0;
        let p = horocycle_point(x, &cfg);
        assert_eq!(p.x, 1.0 / 3.0 + x / 3.0);
        assert_eq!(p.y, 1e-4 / 3.0);
    }

    #[test]
    fn validates() {
        assert!(HorocycleConfig::new(0.0, 0, 0.5).is_err());
        assert!(HorocycleConfig::new(0.0, 1, 0.0).is_err());
        assert!(HorocycleConfig::new(0.0, 1, 1.5).is_err());
    }
}
