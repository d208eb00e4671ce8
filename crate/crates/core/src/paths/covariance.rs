use super::params::HurstIndex;

/// Covariance of a scalar FBM with Var X(1) = q:
/// q · ½(t^{2H} + s^{2H} − |t − s|^{2H}).
pub fn scalar_fbm_covariance(t: f64, s: f64, hurst: HurstIndex, q: f64) -> f64 {
    debug_assert!(t >= 0.0 && s >= 0.0);
    let a = hurst.twice();
    0.5 * q * (t.powf(a) + s.powf(a) - (t - s).abs().powf(a))
}

/// Autocovariance of unit-spaced fractional Gaussian noise at lag `k`.
pub fn fgn_autocovariance(k: usize, hurst: HurstIndex) -> f64 {
    let a = hurst.twice();
    let k = k as f64;
    0.5 * ((k + 1.0).powf(a) - 2.0 * k.powf(a) + (k - 1.0).abs().powf(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: f64) -> HurstIndex {
        HurstIndex::new(v).unwrap()
    }

    #[test]
    fn covariance_examples() {
        for v in [0.1, 0.5, 0.9] {
            assert_eq!(scalar_fbm_covariance(1.0, 1.0, h(v), 1.0), 1.0);
        }
        assert_eq!(scalar_fbm_covariance(2.0, 0.0, h(0.7), 1.0), 0.0);
        assert!((scalar_fbm_covariance(2.0, 1.0, h(0.5), 1.0) - 1.0).abs() < 1e-15);
        // ½(2^{1.5} + 1 − 1) = √2
        let v = scalar_fbm_covariance(2.0, 1.0, h(0.75), 1.0);
        assert!((v - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn autocovariance_examples() {
        for v in [0.2, 0.5, 0.8] {
            assert_eq!(fgn_autocovariance(0, h(v)), 1.0);
        }
        for k in 1..10 {
            assert!(fgn_autocovariance(k, h(0.5)).abs() < 1e-15);
        }
        assert!((fgn_autocovariance(1, h(0.75)) - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn autocovariance_matches_increment_of_covariance() {
        // Cov(X(k+1) − X(k), X(1) − X(0)) expanded through the FBM covariance.
        let hh = h(0.3);
        for k in 0..6 {
            let kf = k as f64;
            let c = |a: f64, b: f64| scalar_fbm_covariance(a, b, hh, 1.0);
            let v = c(kf + 1.0, 1.0) - c(kf + 1.0, 0.0) - c(kf, 1.0) + c(kf, 0.0);
            assert!((v - fgn_autocovariance(k, hh)).abs() < 1e-12);
        }
    }
}
