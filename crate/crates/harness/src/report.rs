use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::OutputFormat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One named coordinate of a grid point, formatted so that parsing it
/// back gives the same value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coord {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    /// The relation being checked, written out.
    pub anchor: String,
    pub grid_size: usize,
    pub max_rel_err: f64,
    pub mean_rel_err: f64,
    pub n_validity_skips: usize,
    /// Points whose evaluation failed with a numerical error; they carry no
    /// relative error and make the identity fail.
    pub n_errors: usize,
    /// Effective pass threshold.
    pub tol: f64,
    pub status: Status,
    pub worst_point: Vec<Coord>,
}

impl IdentityReport {
    pub fn evaluated(&self) -> usize {
        self.grid_size - self.n_validity_skips - self.n_errors
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode report: {0}")]
    Csv(#[from] csv::Error),
}

const CSV_HEADER: [&str; 9] =
    ["identity_id", "anchor", "grid_size", "max_rel_err", "mean_rel_err", "n_validity_skips", "n_errors", "tol", "status"];

pub fn render(reports: &[IdentityReport], format: OutputFormat) -> Result<Vec<u8>, ReportError> {
    match format {
        OutputFormat::Json => {
            Ok(serde_json::to_vec_pretty(reports)?)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in reports {
                w.write_record([
                    r.identity_id.clone(),
                    r.anchor.clone(),
                    r.grid_size.to_string(),
                    r.max_rel_err.to_string(),
                    r.mean_rel_err.to_string(),
                    r.n_validity_skips.to_string(),
                    r.n_errors.to_string(),
                    r.tol.to_string(),
                    r.status.name().to_string(),
                ])?;
            }
            w.into_inner().map_err(|e| ReportError::Io(e.into_error()))
        }
    }
}

/// Writes `reports` to `path`, or to standard output when `path` is `None`.
pub fn emit_report(reports: &[IdentityReport], format: OutputFormat, path: Option<&Path>) -> Result<(), ReportError> {
    let bytes = render(reports, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            if !bytes.ends_with(b"\n") {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

pub fn parse_json(text: &str) -> Result<Vec<IdentityReport>, serde_json::Error> {
    serde_json::from_str(text)
}
