//! Monte Carlo studies over path ensembles. Each returns plain data; pass
//! or fail decisions live with the experiments that call them.

use serde::{Deserialize, Serialize};

use super::config::Ensemble;
use super::runner::map_paths;
use super::stats::{fit_power_law, ks_two_sample, KsResult, McEstimate, SlopeFit};
use crate::error::{Error, Result};
use crate::geometry::{batch_hull, hull_functionals, quadrant_of, HullFunctionals};
use crate::paths::{lamperti_transform, reverse_path, SpdMatrix, TimeGrid};
use crate::points::PointCloud;
use crate::process::{
    endpoint_interior_routes, evolve_hull, growth_fraction, quadrant_cover, CoverRecord, EndpointRoutes,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub index: usize,
    pub estimate: McEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteriorStudy {
    pub curve: Vec<ProbePoint>,
    pub records: Vec<CoverRecord>,
}

impl InteriorStudy {
    /// Paths where the orthants were all visited but the origin was not yet
    /// interior at the cover index.
    pub fn sufficiency_violations(&self) -> usize {
        self.records
            .iter()
            .filter(|r| match (r.cover_index, r.origin_interior_index) {
                (Some(c), Some(i)) => i > c,
                (Some(_), None) => true,
                _ => false,
            })
            .count()
    }

    pub fn covered_paths(&self) -> usize {
        self.records.iter().filter(|r| r.cover_index.is_some()).count()
    }
}

/// 1, 2, 4, ..., n (with n appended if it is not a power of two).
pub fn default_probes(steps: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |k| k.checked_mul(2)).take_while(|&k| k <= steps).collect();
    if out.last() != Some(&steps) {
        out.push(steps);
    }
    out
}

/// Fraction of paths whose origin-interior index is at most k, for each probe k.
pub fn interior_curve(indices: &[Option<usize>], probes: &[usize]) -> Vec<ProbePoint> {
    probes
        .iter()
        .map(|&k| {
            let hits = indices.iter().filter(|i| matches!(i, Some(v) if *v <= k)).count();
            ProbePoint { index: k, estimate: McEstimate::proportion(hits, indices.len()) }
        })
        .collect()
}

pub fn estimate_interior_probability(ensemble: &Ensemble, probes: &[usize]) -> Result<InteriorStudy> {
    let records = map_paths(ensemble, 0, |p| quadrant_cover(&p))?;
    let indices: Vec<Option<usize>> = records.iter().map(|r| r.origin_interior_index).collect();
    Ok(InteriorStudy { curve: interior_curve(&indices, probes), records })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointStudy {
    pub direct: McEstimate,
    pub reversed: McEstimate,
    pub disagreements: usize,
    pub routes: Vec<EndpointRoutes>,
}

pub fn estimate_endpoint_interior(ensemble: &Ensemble) -> Result<EndpointStudy> {
    let routes = map_paths(ensemble, 0, |p| Ok(endpoint_interior_routes(&p)))?;
    let m = routes.len();
    Ok(EndpointStudy {
        direct: McEstimate::proportion(routes.iter().filter(|r| r.direct).count(), m),
        reversed: McEstimate::proportion(routes.iter().filter(|r| r.reversed).count(), m),
        disagreements: routes.iter().filter(|r| !r.agree()).count(),
        routes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaircaseLevel {
    pub steps: usize,
    pub fraction: McEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub t: f64,
    pub functionals: HullFunctionals,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaircaseProfile {
    pub levels: Vec<StaircaseLevel>,
    /// Functionals of one path at every grid point of the coarsest level.
    pub trace: Vec<TracePoint>,
}

impl StaircaseProfile {
    pub fn strictly_decreasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].fraction.estimate < w[0].fraction.estimate)
    }
}

/// Step-function trace of V(t_k) for one sampled path.
pub fn staircase_trace(ensemble: &Ensemble, index: u64) -> Result<Vec<TracePoint>> {
    let path = ensemble.sampler()?.sample(ensemble.seed, index);
    let traj = evolve_hull(&path)?;
    Ok(traj
        .functional_trace()
        .into_iter()
        .enumerate()
        .map(|(k, functionals)| TracePoint { t: path.grid.time(k), functionals })
        .collect())
}

pub fn staircase_profile(ensemble: &Ensemble, ladder: &[usize], trace_path: u64) -> Result<StaircaseProfile> {
    let mut levels = Vec::with_capacity(ladder.len());
    for &n in ladder {
        let level = ensemble.with_steps(n)?;
        let fractions = map_paths(&level, 0, |p| Ok(growth_fraction(&evolve_hull(&p)?)))?;
        levels.push(StaircaseLevel { steps: n, fraction: McEstimate::mean(&fractions) });
    }
    let coarsest = ladder.iter().copied().min().ok_or_else(|| Error::InvalidConfig("empty ladder".into()))?;
    let trace = staircase_trace(&ensemble.with_steps(coarsest)?, trace_path)?;
    Ok(StaircaseProfile { levels, trace })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalKs {
    pub volume: KsResult,
    pub surface: KsResult,
    pub diameter: KsResult,
}

impl FunctionalKs {
    pub fn any_rejected(&self, alpha: f64) -> bool {
        [self.volume, self.surface, self.diameter].iter().any(|r| r.rejected(alpha))
    }
}

fn final_functionals(points: &PointCloud) -> HullFunctionals {
    batch_hull(points.view()).map(|h| hull_functionals(&h)).unwrap_or(HullFunctionals::DEGENERATE)
}

fn functional_ks(a: &[HullFunctionals], b: &[HullFunctionals]) -> Result<FunctionalKs> {
    let pick = |s: &[HullFunctionals], f: fn(&HullFunctionals) -> f64| s.iter().map(f).collect::<Vec<_>>();
    Ok(FunctionalKs {
        volume: ks_two_sample(&pick(a, |f| f.volume), &pick(b, |f| f.volume))?,
        surface: ks_two_sample(&pick(a, |f| f.surface), &pick(b, |f| f.surface))?,
        diameter: ks_two_sample(&pick(a, |f| f.diameter), &pick(b, |f| f.diameter))?,
    })
}

/// KS comparison of hull functionals at the horizon: paths 0..M against the
/// reversals of the independent paths M..2M.
pub fn reversibility_test(ensemble: &Ensemble) -> Result<FunctionalKs> {
    let forward = map_paths(ensemble, 0, |p| Ok(final_functionals(&p.samples)))?;
    let reversed = map_paths(ensemble, ensemble.paths as u64, |p| Ok(final_functionals(&reverse_path(&p).samples)))?;
    functional_ks(&forward, &reversed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub base_point: f64,
    pub row: usize,
    pub col: usize,
    pub estimate: McEstimate,
    pub target: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LampertiReport {
    /// E[L_i(u) L_j(u)] against Q_ij at each base point.
    pub marginal: Vec<MomentCheck>,
    /// Paired difference of E[L_i(u) L_j(u + lag)] between the first base
    /// point and each later one; target 0.
    pub shift: Vec<MomentCheck>,
    /// Per-path time average of the positive-orthant indicator minus the
    /// indicator at the first base point; target 0.
    pub ergodic: MomentCheck,
    pub time_average: McEstimate,
    pub ensemble_average: McEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LampertiSettings {
    pub base_points: Vec<f64>,
    pub lag: f64,
    pub window: [f64; 2],
    pub window_points: usize,
}

/// Fraction of the rows of `values` lying in the open positive orthant.
pub fn positive_orthant_time_average(values: &PointCloud) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let all_ones = (1u32 << values.dim()) - 1;
    let hits = values.iter().filter(|p| quadrant_of(p).is_some_and(|q| q.bits() == all_ones)).count();
    hits as f64 / values.len() as f64
}

fn moment(samples: &[f64], target: f64, base_point: f64, row: usize, col: usize) -> MomentCheck {
    let estimate = McEstimate::mean(samples);
    MomentCheck { base_point, row, col, estimate, target, z: estimate.z_score(target) }
}

pub fn lamperti_stationarity_test(ensemble: &Ensemble, settings: &LampertiSettings) -> Result<LampertiReport> {
    let d = ensemble.covariance.dim();
    let bases = &settings.base_points;
    if bases.is_empty() {
        return Err(Error::InvalidConfig("lamperti: no base points".into()));
    }
    let [w0, w1] = settings.window;
    let m = settings.window_points;
    let window: Vec<f64> = (0..m).map(|i| w0 + (w1 - w0) * i as f64 / (m - 1).max(1) as f64).collect();
    let mut u_points: Vec<f64> = bases.clone();
    u_points.extend(bases.iter().map(|u| u + settings.lag));
    u_points.extend(&window);
    let nb = bases.len();
    let hurst = ensemble.hurst;

    let per_path = map_paths(ensemble, 0, |p| {
        let l = lamperti_transform(&p, hurst, &u_points)?;
        let window_values = PointCloud::from_flat(d, l.as_flat()[2 * nb * d..].to_vec());
        Ok((l, positive_orthant_time_average(&window_values)))
    })?;

    let q = &ensemble.covariance;
    let mut marginal = Vec::new();
    for (b, &u) in bases.iter().enumerate() {
        for i in 0..d {
            for j in i..d {
                let s: Vec<f64> = per_path.iter().map(|(l, _)| l.point(b)[i] * l.point(b)[j]).collect();
                marginal.push(moment(&s, q.get(i, j), u, i, j));
            }
        }
    }
    let mut shift = Vec::new();
    for b in 1..nb {
        for i in 0..d {
            for j in 0..d {
                let s: Vec<f64> = per_path
                    .iter()
                    .map(|(l, _)| l.point(0)[i] * l.point(nb)[j] - l.point(b)[i] * l.point(nb + b)[j])
                    .collect();
                shift.push(moment(&s, 0.0, bases[b], i, j));
            }
        }
    }
    let all_ones = (1u32 << d) - 1;
    let indicator: Vec<f64> = per_path
        .iter()
        .map(|(l, _)| if quadrant_of(l.point(0)).is_some_and(|q| q.bits() == all_ones) { 1.0 } else { 0.0 })
        .collect();
    let time_avgs: Vec<f64> = per_path.iter().map(|(_, ta)| *ta).collect();
    let diffs: Vec<f64> = time_avgs.iter().zip(&indicator).map(|(a, b)| a - b).collect();
    Ok(LampertiReport {
        marginal,
        shift,
        ergodic: moment(&diffs, 0.0, bases[0], 0, 0),
        time_average: McEstimate::mean(&time_avgs),
        ensemble_average: McEstimate::mean(&indicator),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub fit: SlopeFit,
    pub means: Vec<(f64, McEstimate)>,
}

/// Slope of log mean hull volume against log t over the probe times.
pub fn scaling_fit(ensemble: &Ensemble, t_points: &[f64]) -> Result<ScalingStudy> {
    let grid: TimeGrid = ensemble.grid;
    let ks: Vec<usize> = t_points.iter().map(|&t| grid.nearest_index(t)).collect();
    let volumes = map_paths(ensemble, 0, |p| {
        let traj = evolve_hull(&p)?;
        Ok(ks.iter().map(|&k| traj.functionals_at(k).volume).collect::<Vec<f64>>())
    })?;
    let means: Vec<(f64, McEstimate)> = ks
        .iter()
        .enumerate()
        .map(|(j, &k)| {
            let column: Vec<f64> = volumes.iter().map(|v| v[j]).collect();
            (grid.time(k), McEstimate::mean(&column))
        })
        .collect();
    let t: Vec<f64> = means.iter().map(|(t, _)| *t).collect();
    let v: Vec<f64> = means.iter().map(|(_, m)| m.estimate).collect();
    Ok(ScalingStudy { fit: fit_power_law(&t, &v)?, means })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnchorReport {
    pub area: McEstimate,
    pub perimeter: McEstimate,
}

/// Mean hull area and perimeter of planar standard Brownian motion at the
/// horizon.
pub fn bm_cross_anchor(ensemble: &Ensemble) -> Result<AnchorReport> {
    if ensemble.hurst.value() != 0.5 || ensemble.covariance != SpdMatrix::identity(2) {
        return Err(Error::InvalidConfig("anchor needs H = 0.5 and Q = I in two dimensions".into()));
    }
    let f = map_paths(ensemble, 0, |p| Ok(final_functionals(&p.samples)))?;
    let area: Vec<f64> = f.iter().map(|x| x.volume).collect();
    let perimeter: Vec<f64> = f.iter().map(|x| x.surface).collect();
    Ok(AnchorReport { area: McEstimate::mean(&area), perimeter: McEstimate::mean(&perimeter) })
}
