//! Simulation of vector-valued fractional Brownian motion and the geometry of
//! its growing convex hull.

pub mod error;
pub mod geometry;
pub mod paths;
pub mod points;
pub mod process;
pub mod registry;
pub mod seed;
pub mod verification;

pub use error::{Error, Result};
pub use points::{PointCloud, PointSet};
pub use registry::Registry;
pub use seed::RandomSeed;
