//! Verification suite for `fracbessel`: every built-in identity is checked
//! over configurable parameter grids and summarised in a report.

pub mod config;
pub mod identities;
pub mod report;
pub mod suite;

pub use config::{ConfigError, Grids, OutputFormat, SuiteConfig};
pub use report::{emit_report, parse_json, render, Coord, IdentityReport, ReportError, Status};
pub use suite::{run_identity, run_suite};
