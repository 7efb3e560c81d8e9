use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::ExperimentConfig;
use crate::caps::Caps;
use crate::error::Result;

/// How a number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// closed form or exact finite computation
    Exact,
    /// converged iteration at a stated tolerance
    Numerical,
    /// finite-data estimate of a limit; carries a bracket
    Estimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Quantity {
    pub fn exact(value: f64) -> Self {
        Quantity { value, kind: Kind::Exact, bracket: None, tolerance: None }
    }

    pub fn numerical(value: f64, tolerance: f64) -> Self {
        Quantity { value, kind: Kind::Numerical, bracket: None, tolerance: Some(tolerance) }
    }

    pub fn estimate(value: f64, bracket: (f64, f64)) -> Self {
        Quantity { value, kind: Kind::Estimate, bracket: Some(bracket), tolerance: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub lgdms: &'static str,
    pub report_format: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub config: ExperimentConfig,
    /// caps after environment overrides
    pub caps: Caps,
    pub results: Value,
    pub outputs: Vec<String>,
    pub versions: Versions,
    pub wall_time_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    Inconsistent,
}

/// A report plus the tables and images it refers to.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: RunReport,
    pub files: Vec<(String, Vec<u8>)>,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        match self.report.status {
            Status::Ok => 0,
            Status::Inconsistent => 5,
        }
    }

    /// Writes `report.json` and every file into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, bytes) in &self.files {
            std::fs::write(dir.join(name), bytes)?;
        }
        let mut json = serde_json::to_string_pretty(&self.report)?;
        json.push('\n');
        std::fs::write(dir.join("report.json"), json)?;
        Ok(())
    }
}

pub(crate) fn versions() -> Versions {
    Versions { lgdms: env!("CARGO_PKG_VERSION"), report_format: 1 }
}
