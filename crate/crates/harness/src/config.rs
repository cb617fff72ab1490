use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::identities;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("empty grid `{grid}` for identity `{identity}`")]
    EmptyGrid { identity: String, grid: &'static str },
    #[error("tolerances must be positive (tol = {tol:e}, quad_tol = {quad_tol:e})")]
    Tolerance { tol: f64, quad_tol: f64 },
    #[error("cannot read configuration: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed configuration: {0}")]
    Parse(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<OutputFormat> {
        match s {
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            _ => None,
        }
    }
}

/// A complex grid entry `[re, im]`.
pub type Cx = [f64; 2];

/// Parameter values an identity draws its grid points from. Each identity
/// uses the subset of fields it needs and discards points outside its
/// validity region as skips.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Grids {
    pub x: Vec<f64>,
    pub nu: Vec<f64>,
    pub mu: Vec<f64>,
    /// Complex orders checked in addition to `nu`.
    pub complex_nu: Vec<Cx>,
    /// Complex arguments checked in addition to `x`.
    pub complex_z: Vec<Cx>,
}

impl Default for Grids {
    fn default() -> Self {
        let third = 1.0 / 3.0;
        let pi3 = std::f64::consts::FRAC_PI_3;
        Grids {
            x: vec![0.5, 1.0, 2.0, 5.0, 10.0, 20.0],
            nu: vec![0.0, third, 0.5, 1.0, 2.5],
            mu: vec![-0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0],
            complex_nu: vec![[0.5, 0.25]],
            complex_z: vec![[2.0 * pi3.cos(), 2.0 * pi3.sin()]],
        }
    }
}

impl Grids {
    pub(crate) fn check(&self, id: &str, needs: &[&'static str]) -> Result<(), ConfigError> {
        for &grid in needs {
            let empty = match grid {
                "x" => self.x.is_empty() && self.complex_z.is_empty(),
                "nu" => self.nu.is_empty() && self.complex_nu.is_empty(),
                _ => self.mu.is_empty(),
            };
            if empty {
                return Err(ConfigError::EmptyGrid { identity: id.to_string(), grid });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    /// Grids shared by every identity without an override.
    pub grids: Grids,
    /// Per-identity grids replacing `grids`.
    pub overrides: BTreeMap<String, Grids>,
    /// Pass threshold on the relative error. Identities with a tighter
    /// intrinsic threshold use the smaller of the two.
    pub tol: f64,
    /// Target accuracy handed to every quadrature.
    pub quad_tol: f64,
    /// Identity ids to run; empty runs all of them.
    pub identities: Vec<String>,
    pub seed: u64,
    /// Random points added to each identity's grid.
    pub random_points: usize,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grids: Grids::default(),
            overrides: BTreeMap::new(),
            tol: 1e-8,
            quad_tol: 1e-11,
            identities: Vec::new(),
            seed: 0x5eed,
            random_points: 16,
            output_path: None,
            output_format: OutputFormat::Json,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<SuiteConfig, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<SuiteConfig, ConfigError> {
        SuiteConfig::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn grids_for(&self, id: &str) -> &Grids {
        self.overrides.get(id).unwrap_or(&self.grids)
    }

    /// Checks tolerances, identity ids and grids; returns the selected ids
    /// in sorted order.
    pub fn validate(&self) -> Result<Vec<&'static str>, ConfigError> {
        if !(self.quad_tol > 0.0 && self.tol > 0.0) {
            return Err(ConfigError::Tolerance { tol: self.tol, quad_tol: self.quad_tol });
        }
        for id in self.overrides.keys().chain(&self.identities) {
            if identities::find(id).is_none() {
                return Err(ConfigError::UnknownIdentity(id.clone()));
            }
        }
        let mut ids: Vec<&'static str> = if self.identities.is_empty() {
            identities::all().iter().map(|i| i.id).collect()
        } else {
            self.identities.iter().filter_map(|id| identities::find(id)).map(|i| i.id).collect()
        };
        ids.sort_unstable();
        ids.dedup();
        for id in &ids {
            let needs = identities::find(id).map_or(&[][..], |i| i.needs);
            self.grids_for(id).check(id, needs)?;
        }
        Ok(ids)
    }
}
