use serde::{Deserialize, Serialize};

use super::fgn::{build_generator, FgnGenerator};
use super::params::{HurstIndex, SpdMatrix, TimeGrid};
use crate::error::{Error, Result};
use crate::points::PointCloud;
use crate::seed::RandomSeed;

/// Where a sampled path came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathOrigin {
    pub master_seed: u64,
    pub index: u64,
}

/// A d-dimensional trajectory sampled on a uniform grid, starting at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorPath {
    pub grid: TimeGrid,
    pub samples: PointCloud,
    pub hurst: HurstIndex,
    pub covariance: SpdMatrix,
    pub origin: Option<PathOrigin>,
}

impl VectorPath {
    /// Wraps explicit samples; the first sample must be the origin and the
    /// sample count must match the grid.
    pub fn from_samples(grid: TimeGrid, samples: PointCloud, hurst: HurstIndex, covariance: SpdMatrix) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.len()
            )));
        }
        if samples.dim() != covariance.dim() {
            return Err(Error::DimensionMismatch { expected: covariance.dim(), got: samples.dim() });
        }
        if samples.point(0).iter().any(|&v| v != 0.0) {
            return Err(Error::InvalidGrid("path must start at the origin".into()));
        }
        Ok(Self { grid, samples, hurst, covariance, origin: None })
    }

    pub fn dim(&self) -> usize {
        self.samples.dim()
    }

    pub fn steps(&self) -> usize {
        self.grid.steps
    }

    pub fn endpoint(&self) -> &[f64] {
        self.samples.point(self.grid.steps)
    }
}

/// Rounds every coordinate onto the dyadic lattice 2^(e−51)·ℤ, where 2^e bounds
/// the largest magnitude. On this lattice every difference of two samples, and
/// every difference of such differences, is exact in f64.
fn snap_to_lattice(cloud: &mut PointCloud) {
    let max = cloud.as_flat().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 || !max.is_finite() {
        return;
    }
    let e = max.log2().ceil() as i32;
    let quantum = 2f64.powi(e - 51);
    for i in 0..cloud.len() {
        for v in cloud.point_mut(i) {
            *v = (*v / quantum).round() * quantum;
        }
    }
}

/// Reusable sampler for one parameter set: d independent fGn streams,
/// cumulated, rescaled by (T/n)^H and mixed by the Cholesky factor of Q.
pub struct PathSampler {
    hurst: HurstIndex,
    covariance: SpdMatrix,
    grid: TimeGrid,
    generator: Box<dyn FgnGenerator>,
}

impl PathSampler {
    pub fn new(hurst: HurstIndex, covariance: SpdMatrix, grid: TimeGrid) -> Result<Self> {
        Self::with_generator(hurst, covariance, grid, "auto")
    }

    pub fn with_generator(hurst: HurstIndex, covariance: SpdMatrix, grid: TimeGrid, generator: &str) -> Result<Self> {
        let generator = build_generator(generator, grid.steps.max(2), hurst)?;
        Ok(Self { hurst, covariance, grid, generator })
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.covariance.dim()
    }

    pub fn hurst(&self) -> HurstIndex {
        self.hurst
    }

    pub fn generator_name(&self) -> &'static str {
        self.generator.name()
    }

    pub fn sample(&self, seed: RandomSeed, index: u64) -> VectorPath {
        let d = self.dim();
        let n = self.grid.steps;
        let mut rng = seed.rng(index);
        let streams = self.generator.sample_streams(&mut rng, d);
        let scale = self.grid.spacing().powf(self.hurst.value());

        let mut samples = PointCloud::with_capacity(d, n + 1);
        samples.push(&vec![0.0; d]);
        let mut level = vec![0.0; d];
        let mut point = vec![0.0; d];
        let mut z = vec![0.0; d];
        for k in 0..n {
            for ((l, s), zi) in level.iter_mut().zip(&streams).zip(z.iter_mut()) {
                *l += s[k];
                *zi = *l * scale;
            }
            self.covariance.apply_factor(&z, &mut point);
            samples.push(&point);
        }
        snap_to_lattice(&mut samples);

        VectorPath {
            grid: self.grid,
            samples,
            hurst: self.hurst,
            covariance: self.covariance.clone(),
            origin: Some(PathOrigin { master_seed: seed.master, index }),
        }
    }
}

pub fn assemble_fbm_path(hurst: HurstIndex, covariance: &SpdMatrix, grid: TimeGrid, seed: RandomSeed) -> Result<VectorPath> {
    Ok(PathSampler::new(hurst, covariance.clone(), grid)?.sample(seed, 0))
}

/// Y(t_k) = X(t_n) − X(t_{n−k}).
pub fn reverse_path(path: &VectorPath) -> VectorPath {
    let n = path.steps();
    let d = path.dim();
    let end = path.endpoint();
    let mut samples = PointCloud::with_capacity(d, n + 1);
    let mut buf = vec![0.0; d];
    for k in 0..=n {
        let p = path.samples.point(n - k);
        for i in 0..d {
            buf[i] = end[i] - p[i];
        }
        samples.push(&buf);
    }
    VectorPath { samples, origin: None, ..path.clone() }
}

/// c^H X on the grid {c t_k}.
pub fn scale_path(path: &VectorPath, c: f64, hurst: HurstIndex) -> Result<VectorPath> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidConfig(format!("scale factor must be positive, got {c}")));
    }
    let factor = c.powf(hurst.value());
    let grid = TimeGrid::new(path.grid.horizon * c, path.grid.steps)?;
    let scaled: Vec<f64> = path.samples.as_flat().iter().map(|v| v * factor).collect();
    Ok(VectorPath {
        grid,
        samples: PointCloud::from_flat(path.dim(), scaled),
        origin: None,
        ..path.clone()
    })
}

/// L(u) = e^{−Hu} X(e^u), reading X at the grid point nearest to e^u.
pub fn lamperti_transform(path: &VectorPath, hurst: HurstIndex, u_grid: &[f64]) -> Result<PointCloud> {
    let min = path.grid.spacing();
    let max = path.grid.horizon;
    let slack = 1e-12;
    let mut out = PointCloud::with_capacity(path.dim(), u_grid.len());
    for &u in u_grid {
        let t = u.exp();
        if !(t >= min * (1.0 - slack) && t <= max * (1.0 + slack)) {
            return Err(Error::OutOfHorizon { time: t, min, max });
        }
        let k = path.grid.nearest_index(t);
        let w = (-hurst.value() * u).exp();
        let p: Vec<f64> = path.samples.point(k).iter().map(|v| w * v).collect();
        out.push(&p);
    }
    Ok(out)
}
