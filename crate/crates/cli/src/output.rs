use std::fmt;
use std::path::{Path, PathBuf};

use fbm_hull::verification::{ExperimentConfig, ExperimentReport};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
    Run(fbm_hull::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o: {m}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<fbm_hull::Error> for CliError {
    fn from(e: fbm_hull::Error) -> Self {
        CliError::Run(e)
    }
}

#[derive(Debug, Serialize)]
pub struct ManifestEntry {
    pub name: String,
    pub files: Vec<String>,
    pub wall_time_secs: f64,
}

/// Written last for every run. Everything except the wall times is a
/// function of the config and seed.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub master_seed: u64,
    pub wall_time_secs: f64,
    pub config: ExperimentConfig,
    pub outputs: Vec<ManifestEntry>,
}

pub struct OutputDir {
    root: PathBuf,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(root).map_err(|e| CliError::Io(format!("{}: {e}", root.display())))?;
        Ok(Self { root: root.to_path_buf() })
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.root.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.write(name, &text)
    }
}

pub fn summary(reports: &[ExperimentReport]) -> Value {
    let experiments: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "experiment": r.experiment,
                "passed": r.passed(),
                "checks": r.checks,
                "summary": r.summary,
            })
        })
        .collect();
    json!({ "schema_version": 1, "passed": reports.iter().all(|r| r.passed()), "experiments": experiments })
}

/// Machine-readable list of violated checks; empty when everything passed.
pub fn failures(reports: &[ExperimentReport]) -> Value {
    let failed: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.failed_checks().map(move |c| {
                json!({ "experiment": r.experiment, "check": c.name, "value": c.value, "threshold": c.threshold })
            })
        })
        .collect();
    json!({ "schema_version": 1, "failed": failed })
}
