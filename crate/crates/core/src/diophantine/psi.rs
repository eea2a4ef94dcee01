use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// A non-increasing approximation function `ψ: ℕ → ℝ₊`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ApproximationFunction {
    /// `q^{−τ}`
    Power { tau: f64 },
    /// `1/(q log q)`, with `ψ(1) := ψ(2)`.
    QLogQ,
    Constant { c: f64 },
    /// `ψ(q) = values[q − 1]`, extended by its last entry.
    Table { values: Vec<f64> },
}

impl ApproximationFunction {
    pub fn power(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::invalid(format!("power exponent must be positive, got {tau}")));
        }
        Ok(ApproximationFunction::Power { tau })
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!("constant must be positive, got {c}")));
        }
        Ok(ApproximationFunction::Constant { c })
    }

    pub fn table(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::invalid("table entries must be positive"));
        }
        if values.windows(2).skip(1).any(|w| w[1] > w[0]) {
            return Err(Error::invalid("table must be non-increasing from q = 2 on"));
        }
        Ok(ApproximationFunction::Table { values })
    }

    pub fn eval(&self, q: u64) -> f64 {
        let qf = q.max(1) as f64;
        match self {
            ApproximationFunction::Power { tau } => qf.powf(-tau),
            ApproximationFunction::QLogQ => {
                let q = qf.max(2.0);
                1.0 / (q * q.ln())
            }
            ApproximationFunction::Constant { c } => *c,
            ApproximationFunction::Table { values } => {
                let idx = (q.max(1) as usize - 1).min(values.len() - 1);
                values[idx]
            }
        }
    }

    /// Whether `Σ ψ(q)` diverges, when the family decides it.
    pub fn series_diverges(&self) -> Option<bool> {
        match self {
            ApproximationFunction::Power { tau } => Some(*tau <= 1.0),
            ApproximationFunction::QLogQ | ApproximationFunction::Constant { .. } => Some(true),
            ApproximationFunction::Table { .. } => None,
        }
    }

    /// Monotonicity on `2 ≤ q ≤ qmax`.
    pub fn is_non_increasing(&self, qmax: u64) -> bool {
        let mut prev = f64::INFINITY;
        (2..=qmax.max(2)).all(|q| {
            let v = self.eval(q);
            let ok = v <= prev;
            prev = v;
            ok
        })
    }
}

/// `Σ_{q=2}^{Q} ψ(q)`.
pub fn khintchine_sum(psi: &ApproximationFunction, qmax: u64) -> Result<f64> {
    if qmax < 2 {
        return Err(Error::invalid("Q must be >= 2"));
    }
    Ok((2..=qmax).map(|q| psi.eval(q)).sum())
}

impl FromStr for ApproximationFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let number = |t: &str, production: &'static str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(production, format!("bad number '{t}'")))
        };
        if s == "qlogq" {
            return Ok(ApproximationFunction::QLogQ);
        }
        if let Some(rest) = s.strip_prefix("pow:") {
            return Self::power(number(rest, "pow")?).map_err(|e| Error::parse("pow", e.to_string()));
        }
        if let Some(rest) = s.strip_prefix("const:") {
            return Self::constant(number(rest, "const")?)
                .map_err(|e| Error::parse("const", e.to_string()));
        }
        if let Some(rest) = s.strip_prefix("table:") {
            let values = rest.split(',').map(|t| number(t, "table")).collect::<Result<Vec<_>>>()?;
            return Self::table(values).map_err(|e| Error::parse("table", e.to_string()));
        }
        Err(Error::parse(
            "psi",
            format!("unknown approximation function '{s}' (expected pow:<tau>, qlogq, const:<c> or table:<v1>,...)"),
        ))
    }
}

impl fmt::Display for ApproximationFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproximationFunction::Power { tau } => write!(f, "pow:{tau}"),
            ApproximationFunction::QLogQ => write!(f, "qlogq"),
            ApproximationFunction::Constant { c } => write!(f, "const:{c}"),
            ApproximationFunction::Table { values } => {
                let v: Vec<String> = values.iter().map(|x| x.to_string()).collect();
                write!(f, "table:{}", v.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!("pow:1.5".parse::<ApproximationFunction>().unwrap(), ApproximationFunction::Power { tau: 1.5 });
        assert_eq!("qlogq".parse::<ApproximationFunction>().unwrap(), ApproximationFunction::QLogQ);
        assert!(matches!("pow:-1".parse::<ApproximationFunction>(), Err(Error::Parse { production: "pow", .. })));
        assert!(matches!("foo".parse::<ApproximationFunction>(), Err(Error::Parse { production: "psi", .. })));
        assert!("table:0.5,0.6".parse::<ApproximationFunction>().is_ok());
        assert!("table:0.5,0.4,0.45".parse::<ApproximationFunction>().is_err());
    }

    #[test]
    fn qlogq_is_extended_at_one() {
        let psi = ApproximationFunction::QLogQ;
        assert_eq!(psi.eval(1), psi.eval(2));
        assert!(psi.is_non_increasing(1000));
    }

    #[test]
    fn partial_sums() {
        let inv_sq = ApproximationFunction::power(2.0).unwrap();
        let s = khintchine_sum(&inv_sq, 1_000_000).unwrap();
        assert!((s - (std::f64::consts::PI.powi(2) / 6.0 - 1.0)).abs() < 2e-6);
        let harmonic = ApproximationFunction::power(1.0).unwrap();
        let h = khintchine_sum(&harmonic, 1_000_000).unwrap();
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!((h - ((1e6f64).ln() + euler_gamma - 1.0)).abs() < 1e-3);
        let half = ApproximationFunction::constant(0.5).unwrap();
        assert_eq!(khintchine_sum(&half, 10).unwrap(), 4.5);
        assert!(khintchine_sum(&half, 1).is_err());
    }
}
