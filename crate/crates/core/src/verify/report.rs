use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::SweepConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// A report-only comparison disagreed; never counted as a failure.
    Noted,
    Skipped,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Noted => "noted",
            Status::Skipped => "skipped",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub quantity: String,
    pub formula: String,
    /// Empty when the oracle did not run.
    pub oracle: Option<String>,
    pub status: Status,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub n: u64,
    pub t: u64,
    pub s: u32,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Why the cell was skipped or errored.
    pub note: Option<String>,
    pub repro: String,
    pub ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cells: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: usize,
    pub failed_checks: usize,
    pub noted_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub spot_chars: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub environment: Environment,
    pub summary: Summary,
    pub cells: Vec<CellReport>,
}

impl VerificationReport {
    pub fn new(config: SweepConfig, cells: Vec<CellReport>) -> Self {
        let mut summary = Summary {
            cells: cells.len(),
            ..Summary::default()
        };
        for c in &cells {
            match c.status {
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
                Status::Pass | Status::Noted => summary.passed += 1,
            }
            summary.checks += c.checks.len();
            summary.failed_checks += c.checks.iter().filter(|k| k.status == Status::Fail).count();
            summary.noted_checks += c
                .checks
                .iter()
                .filter(|k| k.status == Status::Noted)
                .count();
        }
        let environment = Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            characteristic: config.characteristic,
            spot_chars: config.spot_chars.clone(),
        };
        VerificationReport {
            config,
            environment,
            summary,
            cells,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Checks matching `pred`, with their cells.
    pub fn checks_where<'a>(
        &'a self,
        pred: impl Fn(&CellReport, &Check) -> bool + 'a,
    ) -> impl Iterator<Item = (&'a CellReport, &'a Check)> + 'a {
        self.cells
            .iter()
            .flat_map(|c| c.checks.iter().map(move |k| (c, k)))
            .filter(move |(c, k)| pred(c, k))
    }

    /// JSON with every runtime field zeroed, for run-to-run comparison.
    pub fn canonical_json(&self) -> Result<String> {
        let mut r = self.clone();
        for c in &mut r.cells {
            c.ms = 0;
            for k in &mut c.checks {
                k.ms = 0;
            }
        }
        Ok(serde_json::to_string_pretty(&r)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::invalid(format!("csv: {e}"));
        w.write_record([
            "n", "t", "s", "quantity", "formula", "oracle", "status", "ms",
        ])
        .map_err(csv_err)?;
        for c in &self.cells {
            let mut checks: Vec<&Check> = c.checks.iter().collect();
            checks.sort_by(|a, b| a.quantity.cmp(&b.quantity));
            for k in checks {
                w.write_record([
                    c.n.to_string(),
                    c.t.to_string(),
                    c.s.to_string(),
                    k.quantity.clone(),
                    k.formula.clone(),
                    k.oracle.clone().unwrap_or_default(),
                    k.status.to_string(),
                    k.ms.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::invalid(format!("unknown table format {other:?}"))),
        }
    }
}

/// Writes `report` to `path` in `format`.
pub fn emit_table(report: &VerificationReport, format: TableFormat, path: &Path) -> Result<()> {
    let body = match format {
        TableFormat::Csv => report.to_csv()?,
        TableFormat::Json => report.to_json()?,
    };
    fs::write(path, body).map_err(|e| Error::io(path, e))
}
