//! JSON run configuration.
//!
//! Top-level keys describe the base ensemble used by `simulate` and
//! `staircase`; each experiment block carries its own knobs and defaults to
//! the settings the acceptance suite checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{HurstIndex, PathSampler, SpdMatrix, TimeGrid};
use crate::seed::RandomSeed;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub dimension: usize,
    pub hurst: f64,
    pub q_matrix: Option<Vec<Vec<f64>>>,
    pub horizon: f64,
    pub steps: usize,
    pub paths: usize,
    pub seed: u64,
    pub workers: usize,
    pub generator: String,
    pub experiments: ExperimentBlocks,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            dimension: 2,
            hurst: 0.5,
            q_matrix: None,
            horizon: 1.0,
            steps: 1 << 10,
            paths: 4,
            seed: 42,
            workers: 1,
            generator: "auto".into(),
            experiments: ExperimentBlocks::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentBlocks {
    pub generator: GeneratorBlock,
    pub t1: InteriorBlock,
    pub t2: EndpointBlock,
    pub t3: StaircaseBlock,
    pub reversibility: ReversibilityBlock,
    pub lamperti: LampertiBlock,
    pub scaling: ScalingBlock,
    pub anchor: AnchorBlock,
    pub geometry: GeometryBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorBlock {
    pub hursts: Vec<f64>,
    pub steps: usize,
    pub paths: usize,
    pub max_lag: usize,
    pub z_max: f64,
    pub alpha: f64,
}

impl Default for GeneratorBlock {
    fn default() -> Self {
        Self { hursts: vec![0.25, 0.5, 0.75], steps: 1 << 10, paths: 10_000, max_lag: 4, z_max: 4.0, alpha: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InteriorBlock {
    pub hursts: Vec<f64>,
    pub steps: usize,
    pub paths: usize,
    /// Probe indices; empty means 1, 2, 4, ..., n.
    pub probes: Vec<usize>,
    pub min_probability: f64,
}

impl Default for InteriorBlock {
    fn default() -> Self {
        Self { hursts: vec![0.25, 0.5, 0.75], steps: 1 << 14, paths: 500, probes: vec![], min_probability: 0.98 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EndpointBlock {
    pub hursts: Vec<f64>,
    pub steps: usize,
    pub paths: usize,
    pub min_probability: f64,
}

impl Default for EndpointBlock {
    fn default() -> Self {
        Self { hursts: vec![0.25, 0.5, 0.75], steps: 1 << 14, paths: 500, min_probability: 0.95 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StaircaseBlock {
    pub hurst: f64,
    pub ladder: Vec<usize>,
    pub paths: usize,
    /// fraction(first) / fraction(last) must exceed this.
    pub min_shrink: f64,
    /// Path whose volume trace is emitted.
    pub trace_path: u64,
}

impl Default for StaircaseBlock {
    fn default() -> Self {
        Self { hurst: 0.5, ladder: (10..=16).map(|e| 1 << e).collect(), paths: 100, min_shrink: 4.0, trace_path: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReversibilityBlock {
    pub hurst: f64,
    pub steps: usize,
    pub paths: usize,
    pub replicates: usize,
    pub min_passing: usize,
    pub alpha: f64,
}

impl Default for ReversibilityBlock {
    fn default() -> Self {
        Self { hurst: 0.7, steps: 1 << 10, paths: 1000, replicates: 10, min_passing: 9, alpha: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LampertiBlock {
    pub hurst: f64,
    pub q_matrix: Vec<Vec<f64>>,
    pub horizon: f64,
    pub steps: usize,
    pub paths: usize,
    pub base_points: Vec<f64>,
    pub lag: f64,
    /// Log-time window [start, end] for the time averages.
    pub window: [f64; 2],
    pub window_points: usize,
    pub z_max: f64,
}

impl Default for LampertiBlock {
    fn default() -> Self {
        Self {
            hurst: 0.6,
            q_matrix: vec![vec![2.0, 0.6], vec![0.6, 1.0]],
            horizon: 16.0,
            steps: 1 << 14,
            paths: 2000,
            base_points: vec![-2.0, 0.0],
            lag: 0.5,
            window: [-6.0, 2.5],
            window_points: 64,
            z_max: 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScalingBlock {
    pub hursts: Vec<f64>,
    pub steps: usize,
    pub paths: usize,
    pub t_points: Vec<f64>,
    pub tolerance: f64,
}

impl Default for ScalingBlock {
    fn default() -> Self {
        Self {
            hursts: vec![0.5, 0.75],
            steps: 1 << 14,
            paths: 1000,
            t_points: vec![0.1, 0.16, 0.25, 0.4, 0.63, 1.0],
            tolerance: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnchorBlock {
    pub steps: usize,
    pub paths: usize,
    pub area_tolerance: f64,
    pub perimeter_tolerance: f64,
}

impl Default for AnchorBlock {
    fn default() -> Self {
        Self { steps: 1 << 16, paths: 10_000, area_tolerance: 0.05, perimeter_tolerance: 0.03 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryBlock {
    pub hull_instances: usize,
    pub cover_sets: usize,
    pub hausdorff_triples: usize,
    pub slack: f64,
}

impl Default for GeometryBlock {
    fn default() -> Self {
        Self { hull_instances: 10_000, cover_sets: 10_000, hausdorff_triples: 10_000, slack: 1e-9 }
    }
}

/// A validated parameter set for sampling M paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub hurst: HurstIndex,
    pub covariance: SpdMatrix,
    pub grid: TimeGrid,
    pub paths: usize,
    pub seed: RandomSeed,
    pub workers: usize,
    pub generator: String,
}

impl Ensemble {
    pub fn sampler(&self) -> Result<PathSampler> {
        PathSampler::with_generator(self.hurst, self.covariance.clone(), self.grid, &self.generator)
    }

    pub fn with_hurst(&self, h: f64) -> Result<Self> {
        Ok(Self { hurst: HurstIndex::new(h)?, ..self.clone() })
    }

    pub fn with_steps(&self, steps: usize) -> Result<Self> {
        check_power_of_two(steps)?;
        Ok(Self { grid: TimeGrid::new(self.grid.horizon, steps)?, ..self.clone() })
    }

    pub fn with_horizon(&self, horizon: f64) -> Result<Self> {
        Ok(Self { grid: TimeGrid::new(horizon, self.grid.steps)?, ..self.clone() })
    }

    pub fn with_paths(&self, paths: usize) -> Result<Self> {
        check_paths(paths)?;
        Ok(Self { paths, ..self.clone() })
    }

    pub fn with_covariance(&self, covariance: SpdMatrix) -> Self {
        Self { covariance, ..self.clone() }
    }

    pub fn with_seed(&self, seed: RandomSeed) -> Self {
        Self { seed, ..self.clone() }
    }
}

fn check_power_of_two(steps: usize) -> Result<()> {
    if steps < 2 || !steps.is_power_of_two() {
        return Err(Error::InvalidConfig(format!("steps must be a power of two ≥ 2, got {steps}")));
    }
    Ok(())
}

fn check_paths(paths: usize) -> Result<()> {
    if paths < 2 {
        return Err(Error::InvalidConfig(format!("path count must be at least 2, got {paths}")));
    }
    Ok(())
}

fn check_hursts(hs: &[f64], what: &str) -> Result<()> {
    if hs.is_empty() {
        return Err(Error::InvalidConfig(format!("{what}: empty Hurst list")));
    }
    hs.iter().try_for_each(|&h| HurstIndex::new(h).map(|_| ()))
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn covariance(&self) -> Result<SpdMatrix> {
        match &self.q_matrix {
            Some(rows) => {
                let q = SpdMatrix::new(rows)?;
                if q.dim() != self.dimension {
                    return Err(Error::DimensionMismatch { expected: self.dimension, got: q.dim() });
                }
                Ok(q)
            }
            None => Ok(SpdMatrix::identity(self.dimension)),
        }
    }

    /// The base ensemble from the top-level keys.
    pub fn ensemble(&self) -> Result<Ensemble> {
        check_power_of_two(self.steps)?;
        check_paths(self.paths)?;
        Ok(Ensemble {
            hurst: HurstIndex::new(self.hurst)?,
            covariance: self.covariance()?,
            grid: TimeGrid::new(self.horizon, self.steps)?,
            paths: self.paths,
            seed: RandomSeed::new(self.seed),
            workers: self.workers.max(1),
            generator: self.generator.clone(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidConfig(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.dimension == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        crate::paths::build_generator(&self.generator, 2, HurstIndex::new(0.5)?)?;
        self.ensemble()?;

        let b = &self.experiments;
        check_hursts(&b.generator.hursts, "generator")?;
        check_power_of_two(b.generator.steps)?;
        check_paths(b.generator.paths)?;
        check_hursts(&b.t1.hursts, "t1")?;
        check_power_of_two(b.t1.steps)?;
        check_paths(b.t1.paths)?;
        if b.t1.probes.iter().any(|&k| k > b.t1.steps) {
            return Err(Error::InvalidConfig("t1: probe index beyond the grid".into()));
        }
        check_hursts(&b.t2.hursts, "t2")?;
        check_power_of_two(b.t2.steps)?;
        check_paths(b.t2.paths)?;
        HurstIndex::new(b.t3.hurst)?;
        if b.t3.ladder.len() < 2 {
            return Err(Error::InvalidConfig("t3: ladder needs at least two levels".into()));
        }
        b.t3.ladder.iter().try_for_each(|&n| check_power_of_two(n))?;
        check_paths(b.t3.paths)?;
        HurstIndex::new(b.reversibility.hurst)?;
        check_power_of_two(b.reversibility.steps)?;
        check_paths(b.reversibility.paths)?;
        if b.reversibility.min_passing > b.reversibility.replicates {
            return Err(Error::InvalidConfig("reversibility: min_passing exceeds replicates".into()));
        }
        let l = &b.lamperti;
        HurstIndex::new(l.hurst)?;
        SpdMatrix::new(&l.q_matrix)?;
        check_power_of_two(l.steps)?;
        check_paths(l.paths)?;
        TimeGrid::new(l.horizon, l.steps)?;
        if l.base_points.len() < 2 || l.window[0] >= l.window[1] || l.window_points < 2 || !(l.lag > 0.0) {
            return Err(Error::InvalidConfig("lamperti: need two base points, a positive lag and a proper window".into()));
        }
        check_hursts(&b.scaling.hursts, "scaling")?;
        check_power_of_two(b.scaling.steps)?;
        check_paths(b.scaling.paths)?;
        if b.scaling.t_points.len() < 2 || b.scaling.t_points.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
            return Err(Error::InvalidConfig("scaling: need at least two probe times in (0, 1]".into()));
        }
        check_power_of_two(b.anchor.steps)?;
        check_paths(b.anchor.paths)?;
        Ok(())
    }
}
