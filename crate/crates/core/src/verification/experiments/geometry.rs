use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::json;

use super::{Check, Experiment, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::geometry::{batch_hull, hausdorff_distance, is_origin_interior, origin_inradius_points, ConvexHull};
use crate::points::PointCloud;
use crate::process::cover_points;
use crate::seed::{PathRng, RandomSeed};
use crate::verification::config::ExperimentConfig;
use crate::verification::runner::par_map;

/// Randomized cross-checks of the hull machinery.
pub struct GeometryOracles;

fn random_cloud(rng: &mut PathRng, dim: usize, count: usize, lattice: bool) -> PointCloud {
    let mut cloud = PointCloud::with_capacity(dim, count);
    let mut p = vec![0.0; dim];
    for _ in 0..count {
        for v in p.iter_mut() {
            *v = if lattice { rng.random_range(-3i32..=3) as f64 } else { rng.sample(StandardNormal) };
        }
        cloud.push(&p);
    }
    cloud
}

/// Incremental and batch hulls agree: same vertex set, or both degenerate.
fn hulls_agree(cloud: &PointCloud) -> Result<bool> {
    let incremental = ConvexHull::from_points(cloud.view())?;
    match batch_hull(cloud.view()) {
        Ok(batch) => Ok(incremental.is_full_dimensional() && incremental.sorted_vertices() == batch.sorted_vertices()),
        Err(Error::DegenerateInput { .. }) => Ok(!incremental.is_full_dimensional()),
        Err(e) => Err(e),
    }
}

/// Origin followed by one point in every open orthant plus clutter, shuffled.
fn covering_set(rng: &mut PathRng, dim: usize) -> PointCloud {
    let mut rows: Vec<Vec<f64>> = crate::geometry::QuadrantIndex::all(dim)
        .map(|q| q.representative().iter().map(|s| s * rng.random_range(0.01..3.0)).collect())
        .collect();
    for _ in 0..rng.random_range(0..10) {
        rows.push((0..dim).map(|_| rng.sample(StandardNormal)).collect());
    }
    rows.shuffle(rng);
    rows.insert(0, vec![0.0; dim]);
    PointCloud::from_rows(dim, &rows)
}

fn cover_implies_interior(cloud: &PointCloud) -> Result<bool> {
    let rec = cover_points(cloud.view(), cloud.dim())?;
    let ordered = matches!((rec.cover_index, rec.origin_interior_index), (Some(c), Some(i)) if i <= c);
    let exact = if cloud.dim() <= 3 { is_origin_interior(&batch_hull(cloud.view())?) } else { true };
    Ok(ordered && exact && origin_inradius_points(cloud.view()) > 0.0)
}

impl Experiment for GeometryOracles {
    fn name(&self) -> &'static str {
        "geometry"
    }

    fn description(&self) -> &'static str {
        "incremental against batch hulls, orthant cover against interiority, Hausdorff triangle inequality"
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
        let b = &cfg.experiments.geometry;
        let workers = cfg.workers.max(1);
        let seed = RandomSeed::new(cfg.seed).derive("geometry");

        let hull_seed = seed.derive("hulls");
        let hull_ok = par_map(workers, b.hull_instances, |i| {
            let mut rng = hull_seed.rng(i as u64);
            let dim = 2 + i % 2;
            let count = rng.random_range(1..48);
            hulls_agree(&random_cloud(&mut rng, dim, count, i % 3 == 0))
        })?;

        let cover_seed = seed.derive("cover");
        let cover_ok = par_map(workers, b.cover_sets, |i| {
            let mut rng = cover_seed.rng(i as u64);
            cover_implies_interior(&covering_set(&mut rng, 2 + i % 3))
        })?;

        let triple_seed = seed.derive("hausdorff");
        let slack = b.slack;
        let triangle_ok = par_map(workers, b.hausdorff_triples, |i| {
            let mut rng = triple_seed.rng(i as u64);
            let dim = 2 + i % 2;
            let mut hulls = Vec::with_capacity(3);
            for _ in 0..3 {
                let count = rng.random_range(dim + 1..30);
                hulls.push(batch_hull(random_cloud(&mut rng, dim, count, false).view())?);
            }
            let ab = hausdorff_distance(&hulls[0], &hulls[1])?;
            let bc = hausdorff_distance(&hulls[1], &hulls[2])?;
            let ac = hausdorff_distance(&hulls[0], &hulls[2])?;
            Ok(ac <= ab + bc + slack)
        })?;

        let mut table = Table::new("oracles", &["oracle", "instances", "failures"]);
        let mut checks = vec![];
        for (name, results) in [
            ("incremental_vs_batch", &hull_ok),
            ("cover_implies_interior", &cover_ok),
            ("hausdorff_triangle", &triangle_ok),
        ] {
            let failures = results.iter().filter(|ok| !**ok).count();
            table.push([name.to_string(), results.len().to_string(), failures.to_string()]);
            checks.push(Check::at_most(format!("{name}_failures"), failures as f64, 0.0));
        }
        Ok(ExperimentReport {
            experiment: self.name().into(),
            checks,
            tables: vec![table],
            summary: json!({ "slack": slack }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        let mut cfg = ExperimentConfig::default();
        cfg.experiments.geometry.hull_instances = 200;
        cfg.experiments.geometry.cover_sets = 60;
        cfg.experiments.geometry.hausdorff_triples = 50;
        let rep = GeometryOracles.run(&cfg).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
    }
}
