//! Run configuration: defaults, then a `key = value` file, then flags.
//!
//! ```text
//! # twolift.conf
//! seed = 7
//! threads = 4
//! format = json            # json | csv | text
//! caps.assignments = 100000000
//! caps.expansions = 10000000
//! caps.signings = 16777216
//! tol = 1e-12              # belief-propagation tolerance, in (0, 1e-3]
//! ```

use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;
use twolift_core::partition::Caps;
use twolift_core::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        Format::from_str_ignore_case(s)
    }
}

impl Format {
    fn from_str_ignore_case(s: &str) -> Result<Format> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| Error::InvalidArgument(format!("unknown format {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub caps: Caps,
    pub tol: f64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config { caps: Caps::default(), tol: 1e-12, seed: 0, threads: None, format: Format::Text }
    }
}

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse { line, msg: format!("bad value {raw:?} for {key}") })
}

impl Config {
    /// Applies the settings in `text` on top of `self`.
    pub fn merge_file(mut self, text: &str) -> Result<Config> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, val) = body
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse { line, msg: format!("expected `key = value`, got {body:?}") })?;
            match key {
                "seed" => self.seed = value(line, key, val)?,
                "threads" => self.threads = Some(value(line, key, val)?),
                "format" => {
                    self.format = Format::from_str_ignore_case(val).map_err(|e| Error::Parse { line, msg: e.to_string() })?
                }
                "caps.assignments" => self.caps.assignments = value(line, key, val)?,
                "caps.expansions" => self.caps.expansions = value(line, key, val)?,
                "caps.signings" => self.caps.signings = value(line, key, val)?,
                "tol" => self.tol = value(line, key, val)?,
                _ => return Err(Error::Parse { line, msg: format!("unknown key {key:?}") }),
            }
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.caps.assignments == 0 || self.caps.expansions == 0 || self.caps.signings == 0 {
            return Err(Error::InvalidArgument("caps must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Error::InvalidArgument(format!("tolerance must lie in (0, 1e-3], got {}", self.tol)));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument("thread count must be positive".into()));
        }
        Ok(())
    }
}
