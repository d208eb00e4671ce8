//! Fractional Gaussian noise generators.
//!
//! Two interchangeable strategies produce unit-spaced fGn with autocovariance
//! [`fgn_autocovariance`]:
//!
//! * `spectral`: circulant embedding of the Toeplitz covariance, diagonalized
//!   by one FFT of length 2n. O(n log n) per sample; each FFT yields two
//!   independent streams (real and imaginary parts).
//! * `cholesky`: dense lower factor of the Toeplitz matrix. Exact and slow,
//!   used as the reference oracle and capped at [`DEFAULT_ORACLE_CAP`].
//!
//! `auto` tries the embedding and falls back to Cholesky when the embedding
//! has a materially negative eigenvalue.

use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::covariance::fgn_autocovariance;
use super::params::HurstIndex;
use crate::error::{Error, Result};
use crate::registry::Registry;
use crate::seed::{PathRng, RandomSeed};

pub const DEFAULT_ORACLE_CAP: usize = 1 << 12;

/// Negative circulant eigenvalues with magnitude below this fraction of the
/// largest eigenvalue are clamped to zero.
pub const EIGENVALUE_CLAMP: f64 = 1e-9;

pub trait FgnGenerator: Send + Sync {
    fn name(&self) -> &'static str;

    /// Number of noise values per sample.
    fn len(&self) -> usize;

    fn hurst(&self) -> HurstIndex;

    fn sample(&self, rng: &mut PathRng) -> Vec<f64>;

    /// `count` independent samples drawn from one generator state.
    fn sample_streams(&self, rng: &mut PathRng, count: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| self.sample(rng)).collect()
    }
}

fn check_len(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("fGn length must be at least 2, got {n}")));
    }
    Ok(())
}

pub struct SpectralFgn {
    n: usize,
    hurst: HurstIndex,
    sqrt_eigenvalues: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl SpectralFgn {
    pub fn new(n: usize, hurst: HurstIndex) -> Result<Self> {
        check_len(n)?;
        let m = 2 * n;
        let mut row: Vec<Complex<f64>> = (0..m)
            .map(|j| {
                let lag = if j <= n { j } else { m - j };
                Complex::new(fgn_autocovariance(lag, hurst), 0.0)
            })
            .collect();
        let fft = FftPlanner::new().plan_fft_forward(m);
        fft.process(&mut row);
        let max = row.iter().fold(0.0f64, |a, c| a.max(c.re));
        let min = row.iter().fold(f64::INFINITY, |a, c| a.min(c.re));
        let tolerance = EIGENVALUE_CLAMP * max;
        if min < -tolerance {
            return Err(Error::EmbeddingFailure { min_eigenvalue: min, tolerance });
        }
        let sqrt_eigenvalues = row.iter().map(|c| (c.re.max(0.0) / m as f64).sqrt()).collect();
        Ok(Self { n, hurst, sqrt_eigenvalues, fft })
    }

    fn transform(&self, rng: &mut PathRng) -> Vec<Complex<f64>> {
        let mut buf: Vec<Complex<f64>> = self
            .sqrt_eigenvalues
            .iter()
            .map(|&s| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(s * re, s * im)
            })
            .collect();
        self.fft.process(&mut buf);
        buf
    }
}

impl FgnGenerator for SpectralFgn {
    fn name(&self) -> &'static str {
        "spectral"
    }

    fn len(&self) -> usize {
        self.n
    }

    fn hurst(&self) -> HurstIndex {
        self.hurst
    }

    fn sample(&self, rng: &mut PathRng) -> Vec<f64> {
        self.transform(rng)[..self.n].iter().map(|c| c.re).collect()
    }

    fn sample_streams(&self, rng: &mut PathRng, count: usize) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let y = self.transform(rng);
            out.push(y[..self.n].iter().map(|c| c.re).collect());
            if out.len() < count {
                out.push(y[..self.n].iter().map(|c| c.im).collect());
            }
        }
        out
    }
}

pub struct CholeskyFgn {
    n: usize,
    hurst: HurstIndex,
    /// Packed lower triangle, row i occupying i(i+1)/2 .. (i+1)(i+2)/2.
    packed: Vec<f64>,
}

impl CholeskyFgn {
    pub fn new(n: usize, hurst: HurstIndex) -> Result<Self> {
        Self::with_cap(n, hurst, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(n: usize, hurst: HurstIndex, cap: usize) -> Result<Self> {
        check_len(n)?;
        if n > cap {
            return Err(Error::OracleCapExceeded { n, cap });
        }
        let gamma: Vec<f64> = (0..n).map(|k| fgn_autocovariance(k, hurst)).collect();
        let toeplitz = DMatrix::from_fn(n, n, |i, j| gamma[i.abs_diff(j)]);
        let l = toeplitz
            .cholesky()
            .ok_or_else(|| Error::NotPositiveDefinite("fGn Toeplitz matrix".into()))?
            .unpack();
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                packed.push(l[(i, j)]);
            }
        }
        Ok(Self { n, hurst, packed })
    }
}

impl FgnGenerator for CholeskyFgn {
    fn name(&self) -> &'static str {
        "cholesky"
    }

    fn len(&self) -> usize {
        self.n
    }

    fn hurst(&self) -> HurstIndex {
        self.hurst
    }

    fn sample(&self, rng: &mut PathRng) -> Vec<f64> {
        let z: Vec<f64> = (0..self.n).map(|_| rng.sample(StandardNormal)).collect();
        let mut out = Vec::with_capacity(self.n);
        let mut start = 0;
        for i in 0..self.n {
            let row = &self.packed[start..start + i + 1];
            out.push(row.iter().zip(&z).map(|(a, b)| a * b).sum());
            start += i + 1;
        }
        out
    }
}

pub type GeneratorFactory = dyn Fn(usize, HurstIndex) -> Result<Box<dyn FgnGenerator>> + Send + Sync;

/// Built-in generators: `spectral`, `cholesky`, `auto`.
pub fn generator_registry() -> &'static Registry<GeneratorFactory> {
    static REGISTRY: OnceLock<Registry<GeneratorFactory>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r: Registry<GeneratorFactory> = Registry::new("fGn generator");
        r.register("spectral", Arc::new(|n, h| Ok(Box::new(SpectralFgn::new(n, h)?) as Box<dyn FgnGenerator>)));
        r.register("cholesky", Arc::new(|n, h| Ok(Box::new(CholeskyFgn::new(n, h)?) as Box<dyn FgnGenerator>)));
        r.register(
            "auto",
            Arc::new(|n, h| match SpectralFgn::new(n, h) {
                Ok(g) => Ok(Box::new(g) as Box<dyn FgnGenerator>),
                Err(Error::EmbeddingFailure { .. }) => Ok(Box::new(CholeskyFgn::new(n, h)?)),
                Err(e) => Err(e),
            }),
        );
        r
    })
}

pub fn build_generator(name: &str, n: usize, hurst: HurstIndex) -> Result<Box<dyn FgnGenerator>> {
    generator_registry().get(name)?(n, hurst)
}

/// One fGn sample of length `n` by circulant embedding, stream 0 of `seed`.
pub fn simulate_fgn_spectral(n: usize, hurst: HurstIndex, seed: RandomSeed) -> Result<Vec<f64>> {
    Ok(SpectralFgn::new(n, hurst)?.sample(&mut seed.rng(0)))
}

/// One exact fGn sample of length `n` via the Toeplitz Cholesky factor.
pub fn simulate_fgn_cholesky(n: usize, hurst: HurstIndex, seed: RandomSeed) -> Result<Vec<f64>> {
    Ok(CholeskyFgn::new(n, hurst)?.sample(&mut seed.rng(0)))
}
