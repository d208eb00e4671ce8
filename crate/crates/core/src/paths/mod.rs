//! Exact sampling of d-dimensional fractional Brownian motion and the
//! reversal, scaling and Lamperti transforms of sampled paths.

mod covariance;
pub mod fgn;
mod params;
mod path;

pub use covariance::{fgn_autocovariance, scalar_fbm_covariance};
pub use fgn::{
    build_generator, generator_registry, simulate_fgn_cholesky, simulate_fgn_spectral, CholeskyFgn, FgnGenerator,
    SpectralFgn,
};
pub use params::{HurstIndex, SpdMatrix, TimeGrid};
pub use path::{assemble_fbm_path, lamperti_transform, reverse_path, scale_path, PathOrigin, PathSampler, VectorPath};
