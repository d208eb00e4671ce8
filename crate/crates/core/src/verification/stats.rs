use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monte Carlo mean with its standard error and a normal 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: usize,
}

const Z95: f64 = 1.959963984540054;

impl McEstimate {
    fn from_parts(estimate: f64, stderr: f64, samples: usize) -> Self {
        Self { estimate, stderr, ci_low: estimate - Z95 * stderr, ci_high: estimate + Z95 * stderr, samples }
    }

    /// Proportion estimate with the binomial standard error.
    pub fn proportion(successes: usize, samples: usize) -> Self {
        if samples == 0 {
            return Self::from_parts(f64::NAN, f64::NAN, 0);
        }
        let p = successes as f64 / samples as f64;
        Self::from_parts(p, (p * (1.0 - p) / samples as f64).sqrt(), samples)
    }

    /// Sample mean with the standard error from the sample variance.
    pub fn mean(values: &[f64]) -> Self {
        let m = values.len();
        if m == 0 {
            return Self::from_parts(f64::NAN, f64::NAN, 0);
        }
        let mean = values.iter().sum::<f64>() / m as f64;
        let stderr = if m > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
            (var / m as f64).sqrt()
        } else {
            0.0
        };
        Self::from_parts(mean, stderr, m)
    }

    /// |estimate − target| in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        let gap = (self.estimate - target).abs();
        if self.stderr > 0.0 {
            gap / self.stderr
        } else if gap == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n_a: usize,
    pub n_b: usize,
    pub p_value: f64,
}

impl KsResult {
    pub fn rejected(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Two-sample Kolmogorov–Smirnov test: sup-distance between empirical CDFs
/// and the asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidConfig("KS test needs two non-empty samples".into()));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::InvalidConfig("KS test sample contains NaN".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < na && j < nb {
        let x = a[i].min(b[j]);
        while i < na && a[i] <= x {
            i += 1;
        }
        while j < nb && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let ne = (na * nb) as f64 / (na + nb) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    Ok(KsResult { statistic: d, n_a: na, n_b: nb, p_value: kolmogorov_tail(lambda) })
}

/// Q(λ) = 2 Σ_{j≥1} (−1)^{j−1} exp(−2 j² λ²).
pub fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let a = -2.0 * lambda * lambda;
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut prev = 0.0f64;
    for j in 1..=100 {
        let term = sign * 2.0 * (a * (j * j) as f64).exp();
        sum += term;
        if term.abs() <= 1e-10 * prev || term.abs() <= 1e-16 * sum.abs() {
            return sum.clamp(0.0, 1.0);
        }
        sign = -sign;
        prev = term.abs();
    }
    // series failed to converge: λ is tiny
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_norm: f64,
    /// (t, value) pairs the fit was computed from.
    pub points: Vec<(f64, f64)>,
}

/// Least squares of log(value) on log(t).
pub fn fit_power_law(t: &[f64], values: &[f64]) -> Result<SlopeFit> {
    if t.len() != values.len() {
        return Err(Error::DimensionMismatch { expected: t.len(), got: values.len() });
    }
    if t.len() < 2 || t.iter().chain(values).any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidConfig("power-law fit needs at least two positive pairs".into()));
    }
    let x: Vec<f64> = t.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidConfig("power-law fit needs distinct t values".into()));
    }
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual_norm = x.iter().zip(&y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum::<f64>().sqrt();
    Ok(SlopeFit { slope, intercept, residual_norm, points: t.iter().copied().zip(values.iter().copied()).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_fixtures() {
        let a = [0.3, 1.0, 2.5, 2.5, 7.0];
        let r = ks_two_sample(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(ks_two_sample(&[0.0], &[1.0]).unwrap().statistic, 1.0);
        let r = ks_two_sample(&[1.0, 2.0, 3.0], &[1.5, 2.5, 3.5]).unwrap();
        assert!((r.statistic - 1.0 / 3.0).abs() < 1e-15);
        assert!(ks_two_sample(&[], &[1.0]).is_err());
    }

    #[test]
    fn kolmogorov_tail_values() {
        // reference values of the Kolmogorov distribution
        assert!((kolmogorov_tail(1.3580986393225505) - 0.05).abs() < 1e-6);
        assert!((kolmogorov_tail(1.6276236115189504) - 0.01).abs() < 1e-6);
        assert_eq!(kolmogorov_tail(0.0), 1.0);
        assert!(kolmogorov_tail(5.0) < 1e-20);
    }

    #[test]
    fn exact_power_law() {
        let t = [0.1, 0.2, 0.5, 1.0];
        let v: Vec<f64> = t.iter().map(|x: &f64| 3.0 * x.powf(1.4)).collect();
        let fit = fit_power_law(&t, &v).unwrap();
        assert!((fit.slope - 1.4).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(fit.residual_norm < 1e-12);
    }

    #[test]
    fn estimates() {
        let p = McEstimate::proportion(30, 100);
        assert!((p.estimate - 0.3).abs() < 1e-15);
        assert!((p.stderr - (0.3f64 * 0.7 / 100.0).sqrt()).abs() < 1e-15);
        assert!(p.ci_low <= p.estimate && p.estimate <= p.ci_high);
        let m = McEstimate::mean(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.estimate, 2.5);
        assert!((m.stderr - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(McEstimate::proportion(0, 10).stderr, 0.0);
    }
}
