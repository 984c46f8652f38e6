//! Run configuration, the verification suite, grid scans and report
//! rendering.
//!
//! Every report embeds [`SCHEMA_VERSION`], the tool version and the full
//! [`RunConfig`]. Reports are deterministic for a given config and seed;
//! the only varying field is the timestamp, which is left out when
//! `reproducible` is set.
//!
//! ```
//! use gl2c::report::{run_verify, RunConfig};
//!
//! let config = RunConfig { lmax: 6, reproducible: true, ..RunConfig::default() };
//! let report = run_verify(&config).unwrap();
//! assert!(report.passed());
//! let json = report.to_json();
//! assert_eq!(gl2c::report::VerificationReport::from_json(&json).unwrap(), report);
//! ```

mod config;
mod render;
mod scan;
mod verify;

#[cfg(test)]
mod tests;

pub use config::{ConfigError, Format, Range, RunConfig, MAX_RANGE_POINTS};
pub use render::{render_casimir, render_classify, render_constraints, render_scan_csv, render_verify, render_verify_csv, ConstraintReport};
pub use scan::{run_scan, ScanPlan, ScanReport, ScanRow, CSV_COLUMNS};
pub use verify::run_verify;

use serde::{Deserialize, Serialize};

/// Version of the JSON layout of every report.
pub const SCHEMA_VERSION: &str = "1.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// One check of a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    /// Absent for exact symbolic checks.
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub lmax: Option<u32>,
    pub params: Option<String>,
    pub detail: String,
    /// Discrepancies with the printed derivation found by this check.
    pub flags: Vec<String>,
}

impl CheckRecord {
    pub fn exact(id: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status: Status::from_bool(ok),
            residual: None,
            tolerance: None,
            lmax: None,
            params: None,
            detail: detail.into(),
            flags: Vec::new(),
        }
    }

    /// Passes when `residual <= tolerance`.
    pub fn numeric(id: &str, residual: f64, tolerance: f64, lmax: u32, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status: Status::from_bool(residual <= tolerance),
            residual: Some(residual),
            tolerance: Some(tolerance),
            lmax: Some(lmax),
            params: None,
            detail: detail.into(),
            flags: Vec::new(),
        }
    }

    pub fn with_params(mut self, params: impl Into<String>) -> Self {
        self.params = Some(params.into());
        self
    }

    pub fn with_flags(mut self, flags: impl IntoIterator<Item = String>) -> Self {
        self.flags.extend(flags);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub tool_version: String,
    pub suite: String,
    pub timestamp: Option<String>,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub overall: Status,
}

impl VerificationReport {
    pub fn new(suite: &str, config: &RunConfig, checks: Vec<CheckRecord>) -> Self {
        let overall = Status::from_bool(checks.iter().all(|c| c.status == Status::Pass));
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            suite: suite.into(),
            timestamp: timestamp(config),
            config: config.clone(),
            checks,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Seconds since the Unix epoch, unless the run is reproducible.
pub fn timestamp(config: &RunConfig) -> Option<String> {
    if config.reproducible {
        return None;
    }
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Some(format!("unix:{secs}"))
}
