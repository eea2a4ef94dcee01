use crate::automorphic::EisensteinObservable;
use crate::error::{Error, Result};
use crate::measures::MeasureExpr;
use crate::modular::{HeightBump, HeightIndicator, Observable};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Test functions on the modular surface, written `eisenstein:t=<t>`,
/// `bump:y0=<a>,y1=<b>` or `indicator:ygt=<c>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    Eisenstein { t: f64 },
    Bump { y0: f64, y1: f64 },
    Indicator { ygt: f64 },
}

impl TestFunction {
    pub fn observable(&self) -> Result<Box<dyn Observable>> {
        Ok(match *self {
            TestFunction::Eisenstein { t } => Box::new(EisensteinObservable::new(t)?),
            TestFunction::Bump { y0, y1 } => Box::new(HeightBump::new(y0, y1)?),
            TestFunction::Indicator { ygt } => Box::new(HeightIndicator::new(ygt)?),
        })
    }

    /// Half-width in `ln y` of the envelope window: half a period of
    /// `y^{it}` for an Eisenstein series, half an octave otherwise.
    pub fn envelope_half_width(&self) -> f64 {
        match *self {
            TestFunction::Eisenstein { t } => std::f64::consts::PI / (2.0 * t),
            _ => 0.5 * std::f64::consts::LN_2,
        }
    }
}

fn named_args<'a>(production: &'static str, body: &'a str, keys: &[&str]) -> Result<Vec<f64>> {
    let mut found: BTreeMap<&'a str, f64> = BTreeMap::new();
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(production, format!("expected key=value, got '{part}'")))?;
        let k = k.trim();
        if !keys.contains(&k) {
            return Err(Error::parse(production, format!("unknown key '{k}'")));
        }
        let v = v.trim().parse::<f64>().map_err(|_| Error::parse(production, format!("bad number '{v}'")))?;
        found.insert(k, v);
    }
    keys.iter()
        .map(|k| found.get(k).copied().ok_or_else(|| Error::parse(production, format!("missing key '{k}'"))))
        .collect()
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse("test", format!("expected <kind>:<args>, got '{s}'")))?;
        let tf = match head {
            "eisenstein" => {
                let v = named_args("eisenstein", body, &["t"])?;
                TestFunction::Eisenstein { t: v[0] }
            }
            "bump" => {
                let v = named_args("bump", body, &["y0", "y1"])?;
                TestFunction::Bump { y0: v[0], y1: v[1] }
            }
            "indicator" => {
                let v = named_args("indicator", body, &["ygt"])?;
                TestFunction::Indicator { ygt: v[0] }
            }
            other => return Err(Error::parse("test", format!("unknown test function '{other}'"))),
        };
        tf.observable().map_err(|e| Error::parse(head_production(head), e.to_string()))?;
        Ok(tf)
    }
}

fn head_production(head: &str) -> &'static str {
    match head {
        "eisenstein" => "eisenstein",
        "bump" => "bump",
        _ => "indicator",
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Eisenstein { t } => write!(f, "eisenstein:t={t}"),
            TestFunction::Bump { y0, y1 } => write!(f, "bump:y0={y0},y1={y1}"),
            TestFunction::Indicator { ygt } => write!(f, "indicator:ygt={ygt}"),
        }
    }
}

/// Geometric height grid `y_max·ratio^k`, `k < count`, written `y_max:ratio:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YGrid {
    pub y_max: f64,
    pub ratio: f64,
    pub count: usize,
}

impl YGrid {
    pub fn new(y_max: f64, ratio: f64, count: usize) -> Result<Self> {
        if !(y_max > 0.0 && y_max <= 1.0) {
            return Err(Error::invalid(format!("y_max {y_max} outside (0, 1]")));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::invalid(format!("ratio {ratio} outside (0, 1)")));
        }
        if count < 3 {
            return Err(Error::invalid("a height grid needs at least 3 points"));
        }
        if y_max * ratio.powi(count as i32 - 1) < 1e-12 {
            return Err(Error::invalid("height grid reaches below 1e-12"));
        }
        Ok(YGrid { y_max, ratio, count })
    }

    /// Heights in decreasing order.
    pub fn heights(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.y_max * self.ratio.powi(k as i32)).collect()
    }
}

impl Default for YGrid {
    /// `2^{−2}, …, 2^{−16}`.
    fn default() -> Self {
        YGrid { y_max: 0.25, ratio: 0.5, count: 15 }
    }
}

impl FromStr for YGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::parse("ygrid", format!("expected y_max:ratio:count, got '{s}'")));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::parse("ygrid", format!("bad number '{t}'")));
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse("ygrid", format!("bad count '{}'", parts[2])))?;
        YGrid::new(num(parts[0])?, num(parts[1])?, count).map_err(|e| Error::parse("ygrid", e.to_string()))
    }
}

impl fmt::Display for YGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.y_max, self.ratio, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    /// Midpoint rule for Lebesgue measure, exact for atoms, Monte Carlo otherwise.
    Auto,
    Cylinder,
    MonteCarlo,
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" => Ok(MethodChoice::Auto),
            "cylinder" => Ok(MethodChoice::Cylinder),
            "montecarlo" | "mc" => Ok(MethodChoice::MonteCarlo),
            other => Err(Error::parse("method", format!("expected auto, cylinder or montecarlo, got '{other}'"))),
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Cylinder => "cylinder",
            MethodChoice::MonteCarlo => "montecarlo",
        })
    }
}

/// Everything an equidistribution or basis-identity run depends on.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub measure: MeasureExpr,
    pub test: TestFunction,
    pub y_grid: YGrid,
    pub x0: f64,
    pub q: u64,
    pub method: MethodChoice,
    /// Samples per height (Monte Carlo) or cells/cylinders (deterministic rules).
    pub budget: usize,
    /// Target error of the cylinder rule.
    pub tol: f64,
    /// Truncation exponent of Fourier windows `|m| ≤ y^{−σ}`.
    pub sigma: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

pub const DEFAULT_BUDGET: usize = 1_000_000;
pub const DEFAULT_SIGMA: f64 = 1.2;

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            measure: MeasureExpr::Lebesgue,
            test: TestFunction::Eisenstein { t: 1.0 },
            y_grid: YGrid::default(),
            x0: 0.0,
            q: 1,
            method: MethodChoice::Auto,
            budget: DEFAULT_BUDGET,
            tol: 1e-8,
            sigma: DEFAULT_SIGMA,
            seed: 0,
            out: None,
            summary: None,
        }
    }
}

impl ExperimentConfig {
    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let num = |production: &'static str| {
            value.parse::<f64>().map_err(|_| Error::parse(production, format!("bad number '{value}'")))
        };
        let int = |production: &'static str| {
            value.parse::<u64>().map_err(|_| Error::parse(production, format!("bad integer '{value}'")))
        };
        match key.trim() {
            "measure" => self.measure = value.parse()?,
            "test" => self.test = value.parse()?,
            "ygrid" => self.y_grid = value.parse()?,
            "x0" => self.x0 = num("x0")?,
            "q" => self.q = int("q")?,
            "method" => self.method = value.parse()?,
            "budget" => self.budget = int("budget")? as usize,
            "tol" => self.tol = num("tol")?,
            "sigma" => self.sigma = num("sigma")?,
            "seed" => self.seed = int("seed")?,
            "out" => self.out = Some(PathBuf::from(value)),
            "summary" => self.summary = Some(PathBuf::from(value)),
            other => return Err(Error::parse("config", format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Parse a line-oriented `key=value` file; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_lines(text)?;
        Ok(cfg)
    }

    pub fn apply_lines(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse("config", format!("line {}: expected key=value", n + 1)))?;
            self.set(k, v)?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(Error::invalid("q must be >= 1"));
        }
        if self.budget == 0 {
            return Err(Error::invalid("budget must be >= 1"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tol must be positive"));
        }
        if !(self.sigma > 1.0) {
            return Err(Error::invalid("sigma must exceed 1"));
        }
        if !self.x0.is_finite() {
            return Err(Error::invalid("x0 must be finite"));
        }
        Ok(())
    }

    /// Settings echoed into summaries, keyed by name.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("measure".into(), self.measure.to_string());
        m.insert("test".into(), self.test.to_string());
        m.insert("ygrid".into(), self.y_grid.to_string());
        m.insert("x0".into(), self.x0.to_string());
        m.insert("q".into(), self.q.to_string());
        m.insert("method".into(), self.method.to_string());
        m.insert("budget".into(), self.budget.to_string());
        m.insert("tol".into(), self.tol.to_string());
        m.insert("sigma".into(), self.sigma.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config_files() {
        let cfg = ExperimentConfig::parse_file(
            "# headline\nmeasure = cantor:450:0..446\ntest=eisenstein:t=1\nygrid=0.25:0.5:15\nseed=7\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.y_grid.heights().len(), 15);
        assert_eq!(cfg.test, TestFunction::Eisenstein { t: 1.0 });
        assert!(matches!(cfg.measure, MeasureExpr::Fractal(_)));
    }

    #[test]
    fn errors_name_the_production() {
        let e = "bump:y0=1".parse::<TestFunction>().unwrap_err();
        assert!(matches!(e, Error::Parse { production: "bump", .. }));
        let e = "bump:y0=3,y1=1".parse::<TestFunction>().unwrap_err();
        assert!(matches!(e, Error::Parse { production: "bump", .. }));
        let e = "gauss:s=1".parse::<TestFunction>().unwrap_err();
        assert!(matches!(e, Error::Parse { production: "test", .. }));
        let e = "0.5:2:10".parse::<YGrid>().unwrap_err();
        assert!(matches!(e, Error::Parse { production: "ygrid", .. }));
        let e = ExperimentConfig::parse_file("colour=red").unwrap_err();
        assert!(matches!(e, Error::Parse { production: "config", .. }));
    }

    #[test]
    fn literals_round_trip() {
        for s in ["eisenstein:t=1", "bump:y0=1,y1=2.5", "indicator:ygt=2"] {
            assert_eq!(s.parse::<TestFunction>().unwrap().to_string(), s);
        }
        assert_eq!("0.25:0.5:12".parse::<YGrid>().unwrap().to_string(), "0.25:0.5:12");
    }
}
