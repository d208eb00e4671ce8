use rayon::prelude::*;

use super::config::Ensemble;
use crate::error::{Error, Result};
use crate::paths::{PathSampler, VectorPath};

/// Evaluates `f(0..count)` on `workers` threads and returns results in index
/// order, so any order-dependent reduction afterwards is worker-independent.
pub fn par_map<T, F>(workers: usize, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if workers <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

/// Samples paths `offset..offset + ensemble.paths` and maps each through `f`.
pub fn map_paths<T, F>(ensemble: &Ensemble, offset: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(VectorPath) -> Result<T> + Sync + Send,
{
    let sampler = ensemble.sampler()?;
    map_with_sampler(&sampler, ensemble, offset, f)
}

pub fn map_with_sampler<T, F>(sampler: &PathSampler, ensemble: &Ensemble, offset: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(VectorPath) -> Result<T> + Sync + Send,
{
    par_map(ensemble.workers, ensemble.paths, |i| f(sampler.sample(ensemble.seed, offset + i as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_stable() {
        let a = par_map(1, 100, |i| Ok(i * i)).unwrap();
        let b = par_map(4, 100, |i| Ok(i * i)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn first_error_propagates() {
        let r: Result<Vec<usize>> = par_map(2, 10, |i| if i == 7 { Err(Error::RouteMismatch) } else { Ok(i) });
        assert_eq!(r, Err(Error::RouteMismatch));
    }
}
