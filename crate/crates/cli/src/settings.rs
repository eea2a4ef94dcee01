//! Merged `key=value` settings from a config file and command-line flags.

use horolab_core::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

#[derive(Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl Settings {
    /// Parse config text; `#` starts a comment, blank lines are skipped.
    pub fn from_config(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                production: "config",
                message: format!("line {}: expected key=value", n + 1),
            })?;
            s.values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(key.to_string(), value.into());
    }

    pub fn raw(&mut self, key: &str) -> Option<String> {
        self.used.insert(key.to_string());
        self.values.get(key).cloned()
    }

    pub fn get<T: FromStr>(&mut self, key: &'static str, default: T) -> Result<T> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse::<T>().map_err(|_| Error::Parse {
                production: key,
                message: format!("cannot parse '{v}'"),
            }),
        }
    }

    /// Like [`Settings::get`] for types whose own parser names the failing production.
    pub fn literal<T: FromStr<Err = Error>>(&mut self, key: &str, default: &str) -> Result<T> {
        self.raw(key).unwrap_or_else(|| default.to_string()).parse()
    }

    /// Keys that were supplied but never read.
    pub fn reject_unused(&self) -> Result<()> {
        match self.values.keys().find(|k| !self.used.contains(*k)) {
            Some(k) => Err(Error::Parse { production: "config", message: format!("unknown key '{k}'") }),
            None => Ok(()),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&String, &String)> {
        self.values.iter()
    }
}
