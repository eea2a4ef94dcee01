use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Below this distance a real number is treated as the rational `p/q`.
pub const RATIONAL_TOL: f64 = 1e-15;

/// A reduced fraction `p/q` with its distance `|α − p/q|` to the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RationalApprox {
    pub p: i64,
    pub q: u64,
    pub quality: f64,
}

impl RationalApprox {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Continued-fraction convergents of `α` with denominator at most `qmax`.
///
/// The expansion runs on the exact binary value of `α`. It stops once a
/// convergent lies within [`RATIONAL_TOL`] of `α`, which is then reported
/// with quality 0.
pub fn convergents(alpha: f64, qmax: u64) -> Result<Vec<RationalApprox>> {
    let exact = BigRational::from_float(alpha)
        .ok_or_else(|| Error::invalid(format!("{alpha} is not a finite number")))?;
    expand(&exact, qmax)
}

/// Convergents of the exact rational `num/den`.
pub fn convergents_of_rational(num: i64, den: u64, qmax: u64) -> Result<Vec<RationalApprox>> {
    if den == 0 {
        return Err(Error::invalid("denominator must be positive"));
    }
    let exact = BigRational::new(BigInt::from(num), BigInt::from(den));
    expand(&exact, qmax)
}

fn expand(alpha: &BigRational, qmax: u64) -> Result<Vec<RationalApprox>> {
    if qmax == 0 {
        return Err(Error::invalid("Q must be >= 1"));
    }
    let qmax_big = BigInt::from(qmax);
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let mut p1 = alpha.floor().to_integer();
    let mut q1 = BigInt::one();
    let mut rest = alpha - BigRational::from_integer(p1.clone());
    let mut out = Vec::new();
    loop {
        let frac = BigRational::new(p1.clone(), q1.clone());
        let dist = (alpha - &frac).abs();
        let dist_f = dist.to_f64().unwrap_or(f64::INFINITY);
        let done = rest.is_zero() || dist_f < RATIONAL_TOL;
        out.push(RationalApprox {
            p: p1.to_i64().ok_or_else(|| Error::invalid("numerator exceeds 64 bits"))?,
            q: q1.to_u64().expect("denominators are positive"),
            quality: if done { 0.0 } else { dist_f },
        });
        if done {
            return Ok(out);
        }
        let inv = rest.recip();
        let a = inv.floor().to_integer();
        rest = inv - BigRational::from_integer(a.clone());
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > qmax_big {
            return Ok(out);
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

/// `p/q` with `1 ≤ q ≤ Q` and `|α − p/q| ≤ 1/(qQ)`: the last convergent
/// with denominator at most `Q`.
pub fn dirichlet_approx(alpha: f64, qmax: u64) -> Result<RationalApprox> {
    let c = convergents(alpha, qmax)?;
    Ok(*c.last().expect("the zeroth convergent always qualifies"))
}

/// Exact check of `|α − p/q| ≤ 1/(qQ)` on the binary value of `α`.
pub fn satisfies_dirichlet(alpha: f64, r: &RationalApprox, qmax: u64) -> bool {
    let Some(a) = BigRational::from_float(alpha) else {
        return false;
    };
    let frac = BigRational::new(BigInt::from(r.p), BigInt::from(r.q));
    let bound = BigRational::new(BigInt::one(), BigInt::from(r.q) * BigInt::from(qmax));
    (a - frac).abs() <= bound || r.quality == 0.0
}

/// Whether `p/q` is in lowest terms.
pub fn is_reduced(r: &RationalApprox) -> bool {
    r.q > 0 && (r.p.unsigned_abs()).gcd(&r.q) == 1
}
