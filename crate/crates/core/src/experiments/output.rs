use crate::error::Result;
use crate::report::DecayReport;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// Write `rows` as CSV with a header row.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// JSON summary with a fixed key set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub seed: u64,
    pub exponent: Option<f64>,
    pub stderr: Option<f64>,
    pub r2: Option<f64>,
    pub status: String,
}

impl Summary {
    pub fn new(command: &str, config: BTreeMap<String, String>, seed: u64) -> Self {
        Summary {
            command: command.into(),
            config,
            seed,
            exponent: None,
            stderr: None,
            r2: None,
            status: "ok".into(),
        }
    }

    pub fn with_fit(mut self, report: &DecayReport) -> Self {
        self.exponent = report.exponent;
        self.stderr = report.stderr;
        self.r2 = report.r2;
        self.status = report.status.as_str().into();
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}
