//! Named verification experiments behind a common trait, registered by name
//! and selected at run time.

mod geometry;
mod stochastic;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::Result;
use crate::registry::Registry;

pub use geometry::GeometryOracles;
pub use stochastic::{
    AnchorExperiment, EndpointExperiment, GeneratorExperiment, InteriorExperiment, LampertiExperiment,
    ReversibilityExperiment, ScalingExperiment, StaircaseExperiment,
};

/// One pass/fail decision with the number it was based on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), passed: value <= threshold, value, threshold }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), passed: value >= threshold, value, threshold }
    }

    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), passed: value < threshold, value, threshold }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        let v = if ok { 1.0 } else { 0.0 };
        Self { name: name.into(), passed: ok, value: v, threshold: 1.0 }
    }
}

/// A CSV-shaped result: fixed column names, cells already formatted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push<I, C>(&mut self, row: I)
    where
        I: IntoIterator<Item = C>,
        C: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    pub summary: serde_json::Value,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub trait Experiment: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, config: &ExperimentConfig) -> Result<ExperimentReport>;
}

pub fn experiment_registry() -> &'static Registry<dyn Experiment> {
    static REGISTRY: OnceLock<Registry<dyn Experiment>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r: Registry<dyn Experiment> = Registry::new("experiment");
        r.register("generator", Arc::new(GeneratorExperiment));
        r.register("t1", Arc::new(InteriorExperiment));
        r.register("t2", Arc::new(EndpointExperiment));
        r.register("t3", Arc::new(StaircaseExperiment));
        r.register("reversibility", Arc::new(ReversibilityExperiment));
        r.register("lamperti", Arc::new(LampertiExperiment));
        r.register("scaling", Arc::new(ScalingExperiment));
        r.register("anchor", Arc::new(AnchorExperiment));
        r.register("geometry", Arc::new(GeometryOracles));
        r
    })
}

/// `all` selects every registered experiment in registration order.
pub fn select_experiments(selector: &str) -> Result<Vec<Arc<dyn Experiment>>> {
    let reg = experiment_registry();
    if selector == "all" {
        return Ok(reg.iter().map(|(_, e)| e.clone()).collect());
    }
    Ok(vec![reg.get(selector)?])
}
