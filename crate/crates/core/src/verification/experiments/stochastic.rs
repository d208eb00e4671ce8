use std::f64::consts::PI;

use serde_json::json;

use super::{Check, Experiment, ExperimentReport, Table};
use crate::error::Result;
use crate::paths::{fgn_autocovariance, CholeskyFgn, FgnGenerator, HurstIndex, SpdMatrix, SpectralFgn, TimeGrid};
use crate::seed::RandomSeed;
use crate::verification::config::{Ensemble, ExperimentConfig};
use crate::verification::runner::par_map;
use crate::verification::stats::{ks_two_sample, McEstimate};
use crate::verification::studies::{
    bm_cross_anchor, default_probes, estimate_endpoint_interior, estimate_interior_probability,
    lamperti_stationarity_test, reversibility_test, scaling_fit, staircase_profile, LampertiSettings, MomentCheck,
};

fn master(cfg: &ExperimentConfig, tag: &str) -> RandomSeed {
    RandomSeed::new(cfg.seed).derive(tag)
}

fn report(name: &str, checks: Vec<Check>, tables: Vec<Table>, summary: serde_json::Value) -> ExperimentReport {
    ExperimentReport { experiment: name.into(), checks, tables, summary }
}

pub struct GeneratorExperiment;

impl Experiment for GeneratorExperiment {
    fn name(&self) -> &'static str {
        "generator"
    }

    fn description(&self) -> &'static str {
        "spectral fGn autocovariances at small lags, and spectral against Cholesky endpoint laws"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.generator;
        let n = b.steps;
        let workers = cfg.workers.max(1);
        let mut checks = vec![];
        let mut acov = Table::new("autocovariance", &["hurst", "lag", "estimate", "stderr", "target", "z"]);
        let mut ks_table = Table::new("marginal_ks", &["hurst", "statistic", "p_value"]);
        let mut summary = vec![];
        for (hi, &h) in b.hursts.iter().enumerate() {
            let hurst = HurstIndex::new(h)?;
            let seed = master(cfg, "generator").derive_index(hi as u64);
            let spectral = SpectralFgn::new(n, hurst)?;
            let per_path = par_map(workers, b.paths, |i| {
                let x = spectral.sample(&mut seed.rng(i as u64));
                let lags: Vec<f64> = (0..=b.max_lag.min(n - 1))
                    .map(|k| x[..n - k].iter().zip(&x[k..]).map(|(a, b)| a * b).sum::<f64>() / (n - k) as f64)
                    .collect();
                Ok((lags, x.iter().sum::<f64>()))
            })?;
            for k in 0..per_path[0].0.len() {
                let column: Vec<f64> = per_path.iter().map(|(l, _)| l[k]).collect();
                let est = McEstimate::mean(&column);
                let target = fgn_autocovariance(k, hurst);
                let z = est.z_score(target);
                acov.push([h, k as f64, est.estimate, est.stderr, target, z]);
                checks.push(Check::at_most(format!("autocovariance_z[H={h},lag={k}]"), z, b.z_max));
            }

            let oracle = CholeskyFgn::new(n, hurst)?;
            let oracle_seed = seed.derive("cholesky");
            let oracle_ends = par_map(workers, b.paths, |i| Ok(oracle.sample(&mut oracle_seed.rng(i as u64)).iter().sum::<f64>()))?;
            let spectral_ends: Vec<f64> = per_path.iter().map(|(_, e)| *e).collect();
            let ks = ks_two_sample(&spectral_ends, &oracle_ends)?;
            ks_table.push([h, ks.statistic, ks.p_value]);
            checks.push(Check::at_least(format!("endpoint_ks_p[H={h}]"), ks.p_value, b.alpha));
            summary.push(json!({ "hurst": h, "ks": ks }));
        }
        Ok(report(self.name(), checks, vec![acov, ks_table], json!({ "steps": n, "paths": b.paths, "per_hurst": summary })))
    }
}

pub struct InteriorExperiment;

fn interior_ensemble(cfg: &ExperimentConfig, h: f64, hi: usize, steps: usize, paths: usize) -> Result<Ensemble> {
    Ok(cfg
        .ensemble()?
        .with_hurst(h)?
        .with_steps(steps)?
        .with_paths(paths)?
        .with_seed(master(cfg, "interior").derive_index(hi as u64)))
}

impl Experiment for InteriorExperiment {
    fn name(&self) -> &'static str {
        "t1"
    }

    fn description(&self) -> &'static str {
        "probability that the origin is interior to the running hull, by time index"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.t1;
        let probes = if b.probes.is_empty() { default_probes(b.steps) } else { b.probes.clone() };
        let mut checks = vec![];
        let mut curve = Table::new("curve", &["hurst", "k", "p_hat", "stderr"]);
        let mut summary = vec![];
        for (hi, &h) in b.hursts.iter().enumerate() {
            let study = estimate_interior_probability(&interior_ensemble(cfg, h, hi, b.steps, b.paths)?, &probes)?;
            for p in &study.curve {
                curve.push([h, p.index as f64, p.estimate.estimate, p.estimate.stderr]);
            }
            let final_p = study.curve.iter().find(|p| p.index == b.steps).map(|p| p.estimate.estimate).unwrap_or(f64::NAN);
            let monotone = study.curve.windows(2).all(|w| w[0].estimate.estimate <= w[1].estimate.estimate);
            let violations = study.sufficiency_violations();
            checks.push(Check::at_least(format!("p_hat_at_horizon[H={h}]"), final_p, b.min_probability));
            checks.push(Check::holds(format!("curve_non_decreasing[H={h}]"), monotone));
            checks.push(Check::at_most(format!("interior_after_cover[H={h}]"), violations as f64, 0.0));
            summary.push(json!({
                "hurst": h,
                "p_hat": final_p,
                "covered_paths": study.covered_paths(),
                "interior_after_cover": violations,
            }));
        }
        Ok(report(self.name(), checks, vec![curve], json!({ "steps": b.steps, "paths": b.paths, "per_hurst": summary })))
    }
}

pub struct EndpointExperiment;

impl Experiment for EndpointExperiment {
    fn name(&self) -> &'static str {
        "t2"
    }

    fn description(&self) -> &'static str {
        "probability that the endpoint is interior to the hull, by a direct and a reversed-path route"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.t2;
        let mut checks = vec![];
        let mut table = Table::new("endpoint", &["hurst", "p_hat", "stderr", "reversed_p_hat", "disagreements"]);
        for (hi, &h) in b.hursts.iter().enumerate() {
            let study = estimate_endpoint_interior(&interior_ensemble(cfg, h, hi, b.steps, b.paths)?)?;
            table.push([h, study.direct.estimate, study.direct.stderr, study.reversed.estimate, study.disagreements as f64]);
            checks.push(Check::at_least(format!("p_hat[H={h}]"), study.direct.estimate, b.min_probability));
            checks.push(Check::at_most(format!("route_disagreements[H={h}]"), study.disagreements as f64, 0.0));
        }
        Ok(report(self.name(), checks, vec![table], json!({ "steps": b.steps, "paths": b.paths })))
    }
}

pub struct StaircaseExperiment;

impl Experiment for StaircaseExperiment {
    fn name(&self) -> &'static str {
        "t3"
    }

    fn description(&self) -> &'static str {
        "fraction of grid steps at which the hull grows, along a refinement ladder"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.t3;
        let ens = cfg
            .ensemble()?
            .with_hurst(b.hurst)?
            .with_paths(b.paths)?
            .with_seed(master(cfg, "staircase"));
        let profile = staircase_profile(&ens, &b.ladder, b.trace_path)?;
        let mut ladder = Table::new("ladder", &["steps", "mean_fraction", "stderr"]);
        for l in &profile.levels {
            ladder.push([l.steps as f64, l.fraction.estimate, l.fraction.stderr]);
        }
        let mut trace = Table::new("trace", &["t", "volume", "surface", "diameter"]);
        for p in &profile.trace {
            trace.push([p.t, p.functionals.volume, p.functionals.surface, p.functionals.diameter]);
        }
        let first = profile.levels.first().map(|l| l.fraction.estimate).unwrap_or(f64::NAN);
        let last = profile.levels.last().map(|l| l.fraction.estimate).unwrap_or(f64::NAN);
        let checks = vec![
            Check::holds("fraction_strictly_decreasing", profile.strictly_decreasing()),
            Check::below("finest_over_coarsest", last / first, 1.0 / b.min_shrink),
        ];
        Ok(report(self.name(), checks, vec![ladder, trace], json!({ "hurst": b.hurst, "paths": b.paths })))
    }
}

pub struct ReversibilityExperiment;

impl Experiment for ReversibilityExperiment {
    fn name(&self) -> &'static str {
        "reversibility"
    }

    fn description(&self) -> &'static str {
        "KS comparison of hull functionals between paths and independent reversed paths"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.reversibility;
        let base = cfg.ensemble()?.with_hurst(b.hurst)?.with_steps(b.steps)?.with_paths(b.paths)?;
        let mut table = Table::new(
            "replicates",
            &["replicate", "volume_d", "volume_p", "surface_d", "surface_p", "diameter_d", "diameter_p", "passed"],
        );
        let mut passing = 0;
        for r in 0..b.replicates {
            let ks = reversibility_test(&base.with_seed(master(cfg, "reversibility").derive_index(r as u64)))?;
            let ok = !ks.any_rejected(b.alpha);
            passing += ok as usize;
            table.push([
                r as f64,
                ks.volume.statistic,
                ks.volume.p_value,
                ks.surface.statistic,
                ks.surface.p_value,
                ks.diameter.statistic,
                ks.diameter.p_value,
                ok as u8 as f64,
            ]);
        }
        let checks = vec![Check::at_least("replicates_not_rejected", passing as f64, b.min_passing as f64)];
        Ok(report(self.name(), checks, vec![table], json!({ "hurst": b.hurst, "paths": b.paths, "alpha": b.alpha })))
    }
}

pub struct LampertiExperiment;

impl Experiment for LampertiExperiment {
    fn name(&self) -> &'static str {
        "lamperti"
    }

    fn description(&self) -> &'static str {
        "stationarity and time-average checks for the exponentially time-changed process"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.lamperti;
        let ens = cfg
            .ensemble()?
            .with_covariance(SpdMatrix::new(&b.q_matrix)?)
            .with_hurst(b.hurst)?
            .with_paths(b.paths)?
            .with_seed(master(cfg, "lamperti"));
        let ens = Ensemble { grid: TimeGrid::new(b.horizon, b.steps)?, ..ens };
        let settings = LampertiSettings {
            base_points: b.base_points.clone(),
            lag: b.lag,
            window: b.window,
            window_points: b.window_points,
        };
        let rep = lamperti_stationarity_test(&ens, &settings)?;
        let mut table = Table::new("moments", &["kind", "base_point", "row", "col", "estimate", "stderr", "target", "z"]);
        let mut checks = vec![];
        let mut emit = |kind: &str, m: &MomentCheck| {
            table.push([
                kind.to_string(),
                m.base_point.to_string(),
                m.row.to_string(),
                m.col.to_string(),
                m.estimate.estimate.to_string(),
                m.estimate.stderr.to_string(),
                m.target.to_string(),
                m.z.to_string(),
            ]);
            checks.push(Check::at_most(format!("{kind}_z[u={},{}{}]", m.base_point, m.row, m.col), m.z, b.z_max));
        };
        rep.marginal.iter().for_each(|m| emit("marginal", m));
        rep.shift.iter().for_each(|m| emit("shift", m));
        emit("ergodic", &rep.ergodic);
        Ok(report(
            self.name(),
            checks,
            vec![table],
            json!({ "time_average": rep.time_average, "ensemble_average": rep.ensemble_average }),
        ))
    }
}

pub struct ScalingExperiment;

impl Experiment for ScalingExperiment {
    fn name(&self) -> &'static str {
        "scaling"
    }

    fn description(&self) -> &'static str {
        "log-log slope of mean hull volume against time"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.scaling;
        let mut means = Table::new("means", &["hurst", "t", "mean_volume", "stderr"]);
        let mut fits = Table::new("fit", &["hurst", "slope", "intercept", "residual_norm", "target"]);
        let mut checks = vec![];
        for (hi, &h) in b.hursts.iter().enumerate() {
            let ens = cfg
                .ensemble()?
                .with_hurst(h)?
                .with_steps(b.steps)?
                .with_paths(b.paths)?
                .with_seed(master(cfg, "scaling").derive_index(hi as u64));
            let target = ens.covariance.dim() as f64 * h;
            let study = scaling_fit(&ens, &b.t_points)?;
            for (t, m) in &study.means {
                means.push([h, *t, m.estimate, m.stderr]);
            }
            fits.push([h, study.fit.slope, study.fit.intercept, study.fit.residual_norm, target]);
            checks.push(Check::at_most(format!("slope_error[H={h}]"), (study.fit.slope - target).abs(), b.tolerance));
        }
        Ok(report(self.name(), checks, vec![means, fits], json!({ "paths": b.paths, "steps": b.steps })))
    }
}

pub struct AnchorExperiment;

impl Experiment for AnchorExperiment {
    fn name(&self) -> &'static str {
        "anchor"
    }

    fn description(&self) -> &'static str {
        "mean hull area and perimeter of planar Brownian motion at t = 1"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.anchor;
        let ens = Ensemble {
            hurst: HurstIndex::new(0.5)?,
            covariance: SpdMatrix::identity(2),
            grid: TimeGrid::new(1.0, b.steps)?,
            paths: b.paths,
            seed: master(cfg, "anchor"),
            workers: cfg.workers.max(1),
            generator: cfg.generator.clone(),
        };
        let rep = bm_cross_anchor(&ens)?;
        let mut table = Table::new("anchor", &["quantity", "estimate", "stderr", "target", "relative_error"]);
        let mut checks = vec![];
        for (name, est, target, tol) in [
            ("area", rep.area, PI / 2.0, b.area_tolerance),
            ("perimeter", rep.perimeter, (8.0 * PI).sqrt(), b.perimeter_tolerance),
        ] {
            let rel = (est.estimate - target).abs() / target;
            table.push([name.to_string(), est.estimate.to_string(), est.stderr.to_string(), target.to_string(), rel.to_string()]);
            checks.push(Check::at_most(format!("{name}_relative_error"), rel, tol));
        }
        Ok(report(self.name(), checks, vec![table], json!({ "steps": b.steps, "paths": b.paths })))
    }
}
