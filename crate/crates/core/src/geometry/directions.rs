use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::points::norm;

pub const DEFAULT_DIRECTIONS_2D: usize = 1024;
pub const DEFAULT_DIRECTIONS_3D: usize = 4096;
pub const DEFAULT_DIRECTIONS_HIGH: usize = 4096;

/// A finite family of unit vectors spanning the space.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    dim: usize,
    coords: Vec<f64>,
}

impl DirectionSet {
    /// Validates unit norm (±1e-12) and full rank.
    pub fn new(dim: usize, directions: Vec<Vec<f64>>) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * directions.len());
        for u in &directions {
            if u.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: u.len() });
            }
            if (norm(u) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidConfig("direction is not a unit vector".into()));
            }
            coords.extend_from_slice(u);
        }
        let set = Self { dim, coords };
        if set.rank() < dim {
            return Err(Error::InvalidConfig("directions do not span the space".into()));
        }
        Ok(set)
    }

    /// Deterministic near-uniform directions: equally spaced angles in the
    /// plane, a Fibonacci lattice on the sphere, and ± coordinate axes plus
    /// normalized Gaussian draws from a fixed stream in higher dimensions.
    pub fn uniform(dim: usize, count: usize) -> Self {
        let mut coords = Vec::with_capacity(dim * count);
        match dim {
            1 => coords.extend([1.0, -1.0]),
            2 => {
                for k in 0..count.max(3) {
                    let a = std::f64::consts::TAU * k as f64 / count.max(3) as f64;
                    coords.extend([a.cos(), a.sin()]);
                }
            }
            3 => {
                let m = count.max(4);
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                for k in 0..m {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / m as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    coords.extend([r * phi.cos(), r * phi.sin(), z]);
                }
            }
            _ => {
                for i in 0..dim {
                    for s in [1.0, -1.0] {
                        let mut u = vec![0.0; dim];
                        u[i] = s;
                        coords.extend(u);
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_D1EC);
                for _ in 2 * dim..count {
                    let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
                    let n = norm(&g);
                    coords.extend(g.iter().map(|v| v / n));
                }
            }
        }
        Self { dim, coords }
    }

    pub fn default_for(dim: usize) -> Self {
        let count = match dim {
            2 => DEFAULT_DIRECTIONS_2D,
            3 => DEFAULT_DIRECTIONS_3D,
            _ => DEFAULT_DIRECTIONS_HIGH,
        };
        Self::uniform(dim, count)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let m = nalgebra::DMatrix::from_row_slice(self.len(), self.dim, &self.coords);
        m.rank(1e-9)
    }
}
