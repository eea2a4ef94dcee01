use std::f64::consts::PI;

/// Chebyshev interpolant of a smooth function on `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct ChebyshevSeries {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
}

impl ChebyshevSeries {
    /// Interpolate `f` at the `degree + 1` Chebyshev points of the first kind.
    pub fn fit<F: FnMut(f64) -> f64>(lo: f64, hi: f64, degree: usize, mut f: F) -> Self {
        let n = degree + 1;
        let nf = n as f64;
        let values: Vec<f64> = (0..n)
            .map(|k| {
                let t = (PI * (k as f64 + 0.5) / nf).cos();
                f(0.5 * (hi + lo) + 0.5 * (hi - lo) * t)
            })
            .collect();
        let coeffs = (0..n)
            .map(|j| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * (PI * j as f64 * (k as f64 + 0.5) / nf).cos())
                    .sum();
                let c = 2.0 * s / nf;
                if j == 0 {
                    0.5 * c
                } else {
                    c
                }
            })
            .collect();
        ChebyshevSeries { lo, hi, coeffs }
    }

    /// Clenshaw evaluation.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let t2 = 2.0 * t;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + t2 * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + t * b1 - b2
    }

    /// Magnitude of the trailing coefficients, a proxy for the truncation error.
    pub fn tail_magnitude(&self) -> f64 {
        self.coeffs.iter().rev().take(3).map(|c| c.abs()).fold(0.0, f64::max)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}
