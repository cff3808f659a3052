//! Machine-readable run reports (JSON schema 1) and their CSV forms.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check: passes iff `max_abs_err ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_abs_err: f64,
    pub tolerance: f64,
    /// The statement being checked.
    pub anchor: String,
    pub passed: bool,
}

impl Check {
    /// Tolerance is `default` unless the config overrides it by name or
    /// globally. A NaN error fails.
    pub fn new(cfg: &RunConfig, name: &str, max_abs_err: f64, default: f64, anchor: &str) -> Self {
        let tolerance = cfg.tolerances.resolve(name, default);
        Self {
            name: name.to_string(),
            max_abs_err,
            tolerance,
            anchor: anchor.to_string(),
            passed: max_abs_err <= tolerance,
        }
    }
}

/// Monte Carlo result for one ξ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEntry {
    pub xi_spec: String,
    pub xi: [f64; 8],
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub idet: Option<f64>,
    pub ratio: Option<f64>,
    pub ratio_stderr: Option<f64>,
    pub sigmas: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mc: Vec<McEntry>,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub advisory: Option<String>,
}

impl Report {
    pub fn new(cfg: &RunConfig, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            schema: SCHEMA,
            command: cfg.command.name().to_string(),
            status,
            checks,
            mc: Vec::new(),
            seed: cfg.seed,
            samples: cfg.samples,
            wall_time: None,
            details: BTreeMap::new(),
            advisory: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Obstruction reports list one row per ξ; the others one row per check.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fmt_opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let err = |e: csv::Error| CliError::Io(std::io::Error::other(e));
        if !self.mc.is_empty() {
            w.write_record(["xi-spec", "samples", "seed", "mean", "stderr", "idet", "ratio"])
                .map_err(err)?;
            for m in &self.mc {
                w.write_record([
                    m.xi_spec.clone(),
                    m.samples.to_string(),
                    m.seed.to_string(),
                    m.mean.to_string(),
                    m.stderr.to_string(),
                    fmt_opt(m.idet),
                    fmt_opt(m.ratio),
                ])
                .map_err(err)?;
            }
        } else {
            w.write_record(["name", "max_abs_err", "tolerance", "anchor", "passed"])
                .map_err(err)?;
            for c in &self.checks {
                w.write_record([
                    c.name.clone(),
                    c.max_abs_err.to_string(),
                    c.tolerance.to_string(),
                    c.anchor.clone(),
                    c.passed.to_string(),
                ])
                .map_err(err)?;
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }
}
