//! Exact rational polynomials: square-free factorisation and Sturm-certified
//! real root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn from_f64(coeffs: &[f64]) -> Option<Self> {
        coeffs
            .iter()
            .map(|&c| BigRational::from_float(c))
            .collect::<Option<Vec<_>>>()
            .map(RatPoly::new)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("non-zero polynomial")
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn monic(&self) -> RatPoly {
        let l = self.lead().clone();
        RatPoly(self.0.iter().map(|c| c / &l).collect())
    }

    /// Quotient and remainder of Euclidean division.
    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let mut r = self.0.clone();
        let dd = d.degree();
        if self.0.len() < d.0.len() {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.0.len() - d.0.len() + 1];
        let lead = d.lead();
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] / lead;
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] = &r[k + j] - &coef * dc;
            }
            q[k] = coef;
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Yun's algorithm: `(factor, multiplicity)` with square-free, pairwise
    /// coprime factors of positive degree.
    pub fn square_free(&self) -> Vec<(RatPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut k = 1;
        loop {
            let bd = b.derivative();
            let diff = RatPoly::new(
                (0..c.0.len().max(bd.0.len()))
                    .map(|i| {
                        c.0.get(i).cloned().unwrap_or_else(BigRational::zero)
                            - bd.0.get(i).cloned().unwrap_or_else(BigRational::zero)
                    })
                    .collect(),
            );
            let a = b.gcd(&diff);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = diff.div_rem(&a).0;
            k += 1;
        }
        out
    }

    fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(RatPoly(r.0.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Distinct real roots in `(lo, hi]` of a square-free polynomial with
    /// `p(lo) ≠ 0`, each bracketed to width below `width`.
    pub fn isolate_roots(&self, lo: &BigRational, hi: &BigRational, width: f64) -> Vec<BigRational> {
        let seq = self.sturm_sequence();
        // Sturm: #roots in (a, b] = V(a) − V(b) when p(a) ≠ 0
        let changes = |x: &BigRational| -> usize {
            let signs: Vec<bool> = seq
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let mut roots = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let count = changes(&a) - changes(&b);
            if count == 0 {
                continue;
            }
            if count == 1 {
                roots.push(self.refine(a, b, width));
                continue;
            }
            let mid = self.split_point(&a, &b);
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        roots.sort();
        roots
    }

    /// A point near the middle of `(a, b)` that is not a root.
    fn split_point(&self, a: &BigRational, b: &BigRational) -> BigRational {
        (0..)
            .map(|k: i64| {
                let f = BigRational::new(BigInt::from(512 + k), BigInt::from(1024));
                a + (b - a) * f
            })
            .find(|m| !self.eval(m).is_zero())
            .expect("finitely many roots")
    }

    /// Bisect a bracket `(a, b]` holding exactly one simple root.
    fn refine(&self, mut a: BigRational, mut b: BigRational, width: f64) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        if self.eval(&b).is_zero() {
            return b;
        }
        let sb = self.eval(&b).is_positive();
        while (&b - &a).to_f64().unwrap_or(0.0) > width {
            let mid = (&a + &b) / &two;
            let v = self.eval(&mid);
            if v.is_zero() {
                return mid;
            }
            if v.is_positive() == sb {
                b = mid;
            } else {
                a = mid;
            }
        }
        (a + b) / two
    }
}

pub(crate) fn rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> RatPoly {
        RatPoly::from_f64(c).unwrap()
    }

    #[test]
    fn square_free_multiplicities() {
        // (x − 1)² (x + 2) = x³ − 3x + 2
        let p = poly(&[2.0, -3.0, 0.0, 1.0]);
        let sf = p.square_free();
        let mults: Vec<usize> = sf.iter().map(|(_, k)| *k).collect();
        assert_eq!(mults, vec![1, 2]);
        assert_eq!(sf[1].0, poly(&[-1.0, 1.0]));
        let cube = poly(&[0.0, 0.0, 0.0, 3.0]);
        let sf = cube.square_free();
        assert_eq!(sf.len(), 1);
        assert_eq!(sf[0].1, 3);
    }

    #[test]
    fn isolates_roots_of_cubic() {
        // x³ − x
        let p = poly(&[0.0, -1.0, 0.0, 1.0]);
        let lo = rational(-2.0).unwrap();
        let hi = rational(2.0).unwrap();
        let roots: Vec<f64> = p.isolate_roots(&lo, &hi, 1e-14).iter().map(|r| r.to_f64().unwrap()).collect();
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((r - e).abs() < 1e-13);
        }
        // x² − 2 on (0, 3)
        let q = poly(&[-2.0, 0.0, 1.0]);
        let r = q.isolate_roots(&rational(0.0).unwrap(), &rational(3.0).unwrap(), 1e-15);
        assert!(q.isolate_roots(&rational(2.0).unwrap(), &rational(3.0).unwrap(), 1e-15).is_empty());
        assert_eq!(r.len(), 1);
        assert!((r[0].to_f64().unwrap() - 2f64.sqrt()).abs() < 1e-14);
    }
}
