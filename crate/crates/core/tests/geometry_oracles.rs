use fbm_hull::geometry::{
    batch_hull, hausdorff_distance, hull_functionals, origin_inradius, origin_inradius_points, separating_direction,
    support_function, ConvexHull, DirectionSet, QuadrantIndex,
};
use fbm_hull::{PointCloud, RandomSeed};
use proptest::prelude::*;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, UnitDisc};

fn gaussian_cloud(seed: u64, dim: usize, count: usize) -> PointCloud {
    let mut rng = RandomSeed::new(seed).rng(0);
    let mut cloud = PointCloud::with_capacity(dim, count);
    for _ in 0..count {
        let p: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        cloud.push(&p);
    }
    cloud
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn lex_sorted(mut rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
    rows
}

/// Extreme points of a planar set in general position: p is extreme iff some
/// line through p and another point has every other point strictly on one side.
fn brute_vertices_2d(cloud: &PointCloud) -> Vec<Vec<f64>> {
    let pts = cloud.to_rows();
    let n = pts.len();
    let mut out = vec![];
    for i in 0..n {
        let extreme = (0..n).filter(|&j| j != i).any(|j| {
            (0..n)
                .filter(|&k| k != i && k != j)
                .all(|k| robust::orient2d(c2(&pts[i]), c2(&pts[j]), c2(&pts[k])) > 0.0)
        });
        if extreme {
            out.push(pts[i].clone());
        }
    }
    lex_sorted(out)
}

fn c2(p: &[f64]) -> robust::Coord<f64> {
    robust::Coord { x: p[0], y: p[1] }
}

fn c3(p: &[f64]) -> robust::Coord3D<f64> {
    robust::Coord3D { x: p[0], y: p[1], z: p[2] }
}

/// Every supporting triangle of a spatial set in general position, oriented
/// so that the remaining points lie on the negative side of its normal.
fn brute_facets_3d(pts: &[Vec<f64>]) -> Vec<[usize; 3]> {
    let n = pts.len();
    let mut facets = vec![];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let signs: Vec<f64> = (0..n)
                    .filter(|&m| m != i && m != j && m != k)
                    .map(|m| robust::orient3d(c3(&pts[i]), c3(&pts[j]), c3(&pts[k]), c3(&pts[m])))
                    .collect();
                if signs.iter().all(|&s| s > 0.0) {
                    facets.push([i, j, k]);
                } else if signs.iter().all(|&s| s < 0.0) {
                    facets.push([i, k, j]);
                }
            }
        }
    }
    facets
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[test]
fn spatial_hull_matches_brute_force_facets() {
    for seed in 0..40 {
        let count = 5 + (seed as usize * 7) % 26;
        let cloud = gaussian_cloud(seed, 3, count);
        let pts = cloud.to_rows();
        let facets = brute_facets_3d(&pts);

        let mut expected: Vec<Vec<f64>> = facets.iter().flatten().map(|&i| pts[i].clone()).collect();
        expected = lex_sorted(expected);
        expected.dedup();

        let batch = batch_hull(cloud.view()).unwrap();
        let incremental = ConvexHull::from_points(cloud.view()).unwrap();
        assert_eq!(lex_sorted(batch.vertices().to_rows()), expected, "seed {seed}");
        assert_eq!(lex_sorted(incremental.vertices().to_rows()), expected, "seed {seed}");

        // Simplicial polytope: F = 2V − 4.
        assert_eq!(facets.len(), 2 * expected.len() - 4);
        assert_eq!(batch.facets().len(), facets.len());

        // Facet normals point away from the centroid and every point is inside.
        let centroid: Vec<f64> = (0..3).map(|c| pts.iter().map(|p| p[c]).sum::<f64>() / count as f64).collect();
        for f in batch.facets() {
            assert!((norm(&f.normal) - 1.0).abs() < 1e-12);
            assert!(dot(&f.normal, &centroid) < f.offset);
            for p in &pts {
                assert!(dot(&f.normal, p) <= f.offset + 1e-9);
            }
        }

        let mut volume = 0.0;
        let mut area = 0.0;
        for [i, j, k] in &facets {
            // Origin-independent: signed tetrahedra from the centroid.
            let (a, b, c) = (sub(&pts[*i], &centroid), sub(&pts[*j], &centroid), sub(&pts[*k], &centroid));
            volume += dot(&a, &cross(&sub(&b, &a), &sub(&c, &a))).abs() / 6.0;
            area += norm(&cross(&sub(&pts[*j], &pts[*i]), &sub(&pts[*k], &pts[*i]))) / 2.0;
        }
        let f = hull_functionals(&batch);
        assert!((f.volume - volume).abs() <= 1e-9 * volume, "seed {seed}: {} vs {volume}", f.volume);
        assert!((f.surface - area).abs() <= 1e-9 * area);
        let g = hull_functionals(&incremental);
        assert!((g.volume - f.volume).abs() <= 1e-12 * f.volume && (g.surface - f.surface).abs() <= 1e-12 * f.surface);
    }
}

#[test]
fn rejection_sampled_area_matches_polygon_area() {
    let mut rng = RandomSeed::new(11).rng(0);
    let mut cloud = PointCloud::new(2);
    for _ in 0..100 {
        let p: [f64; 2] = UnitDisc.sample(&mut rng);
        cloud.push(&p);
    }
    let hull = batch_hull(cloud.view()).unwrap();
    let area = hull_functionals(&hull).volume;

    let trials = 100_000;
    let hits = (0..trials)
        .filter(|_| hull.contains(&[rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]))
        .count();
    let p = hits as f64 / trials as f64;
    let estimate = 4.0 * p;
    let se = 4.0 * (p * (1.0 - p) / trials as f64).sqrt();
    assert!((estimate - area).abs() <= 3.0 * se, "area {area}, estimate {estimate} ± {se}");
}

/// Brute-force signed distance from the origin to the boundary: minimum over
/// supporting lines through two input points.
fn brute_origin_inradius_2d(pts: &[Vec<f64>]) -> f64 {
    let n = pts.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let supporting = (0..n)
                .filter(|&k| k != i && k != j)
                .all(|k| robust::orient2d(c2(&pts[i]), c2(&pts[j]), c2(&pts[k])) > 0.0);
            if supporting {
                let e = sub(&pts[j], &pts[i]);
                let normal = [e[1] / norm(&e), -e[0] / norm(&e)];
                best = best.min(dot(&normal, &pts[i]));
            }
        }
    }
    best
}

#[test]
fn origin_inradius_matches_supporting_lines() {
    for seed in 0..50 {
        let cloud = gaussian_cloud(100 + seed, 2, 50);
        let rows = cloud.to_rows();
        let centroid = [rows.iter().map(|p| p[0]).sum::<f64>() / 50.0, rows.iter().map(|p| p[1]).sum::<f64>() / 50.0];
        let shifted: Vec<Vec<f64>> = rows.iter().map(|p| sub(p, &centroid)).collect();
        let shifted_cloud = PointCloud::from_rows(2, &shifted);
        let r = origin_inradius(&batch_hull(shifted_cloud.view()).unwrap());
        let oracle = brute_origin_inradius_2d(&shifted);
        assert!(oracle > 0.0);
        assert!((r - oracle).abs() <= 1e-9, "seed {seed}: {r} vs {oracle}");
    }
}

#[test]
fn separator_exists_exactly_when_origin_is_not_interior() {
    let mut rng = RandomSeed::new(5).rng(0);
    let mut checked = 0;
    for _ in 0..10_000 {
        let count = rng.random_range(3..12);
        let shift = [rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)];
        let rows: Vec<Vec<f64>> = (0..count)
            .map(|_| {
                let x: f64 = rng.sample(StandardNormal);
                let y: f64 = rng.sample(StandardNormal);
                vec![x + shift[0], y + shift[1]]
            })
            .collect();
        let cloud = PointCloud::from_rows(2, &rows);
        let r = origin_inradius(&batch_hull(cloud.view()).unwrap());
        if r.abs() < 1e-9 {
            continue;
        }
        checked += 1;
        match separating_direction(cloud.view(), &[0.0, 0.0]) {
            None => assert!(r > 0.0, "no separator but inradius {r}"),
            Some(u) => {
                assert!(r < 0.0, "separator {u:?} but inradius {r}");
                assert!((norm(&u) - 1.0).abs() < 1e-9);
                for p in &rows {
                    assert!(dot(p, &u) <= 1e-9);
                }
            }
        }
    }
    assert!(checked > 9_000);
}

/// Exact Hausdorff distance between convex polygons: the directed distance
/// is convex along each edge of the first polygon, so it peaks at a vertex.
fn exact_polygon_hausdorff(a: &ConvexHull, b: &ConvexHull) -> f64 {
    fn dist_to_polygon(p: &[f64], hull: &ConvexHull) -> f64 {
        if hull.contains(p) {
            return 0.0;
        }
        let v = hull.vertices().to_rows();
        let h = v.len();
        (0..h)
            .map(|i| {
                let (s, e) = (&v[i], &v[(i + 1) % h]);
                let d = sub(e, s);
                let t = (dot(&sub(p, s), &d) / dot(&d, &d)).clamp(0.0, 1.0);
                let q = [s[0] + t * d[0], s[1] + t * d[1]];
                norm(&sub(p, &q))
            })
            .fold(f64::INFINITY, f64::min)
    }
    let directed =
        |x: &ConvexHull, y: &ConvexHull| x.vertices().iter().map(|p| dist_to_polygon(p, y)).fold(0.0, f64::max);
    directed(a, b).max(directed(b, a))
}

#[test]
fn hausdorff_estimate_brackets_exact_polygon_distance() {
    let half_gap = std::f64::consts::PI / 1024.0;
    for seed in 0..200 {
        let mut a_cloud = gaussian_cloud(500 + seed, 2, 3 + seed as usize % 20);
        let b_cloud = gaussian_cloud(900 + seed, 2, 3 + seed as usize % 13);
        for i in 0..a_cloud.len() {
            a_cloud.point_mut(i)[0] += 0.5;
        }
        let (a, b) = (batch_hull(a_cloud.view()).unwrap(), batch_hull(b_cloud.view()).unwrap());
        let exact = exact_polygon_hausdorff(&a, &b);
        let estimate = hausdorff_distance(&a, &b).unwrap();
        let radius = |h: &ConvexHull| h.vertices().iter().map(norm).fold(0.0, f64::max);
        assert!(estimate <= exact + 1e-12, "seed {seed}");
        assert!(exact - estimate <= (radius(&a) + radius(&b)) * half_gap + 1e-12, "seed {seed}");
        assert!((exact - estimate) <= 0.02 * exact, "seed {seed}: {estimate} vs {exact}");
    }
}

#[test]
fn support_function_equals_scan_over_inputs() {
    let directions = DirectionSet::uniform(3, 200);
    for seed in 0..20 {
        let cloud = gaussian_cloud(2000 + seed, 3, 60);
        let hull = batch_hull(cloud.view()).unwrap();
        for u in directions.iter() {
            let scan = cloud.iter().map(|p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max);
            assert!((support_function(&hull, u) - scan).abs() <= 1e-12 * (1.0 + scan.abs()));
        }
    }
}

#[test]
fn covering_sets_in_four_and_five_dimensions_have_origin_inside() {
    let mut rng = RandomSeed::new(8).rng(0);
    for dim in [4, 5] {
        for _ in 0..50 {
            let rows: Vec<Vec<f64>> = QuadrantIndex::all(dim)
                .map(|q| q.representative().iter().map(|s| s * rng.random_range(0.1..2.0)).collect())
                .collect();
            let cloud = PointCloud::from_rows(dim, &rows);
            assert_eq!(separating_direction(cloud.view(), &vec![0.0; dim]), None);
            assert!(origin_inradius_points(cloud.view()) > 0.0);
        }
    }
}

fn planar_cloud() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 2), 3..80)
}

fn spatial_cloud() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 4..60)
}

fn lattice_cloud(dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec((-4i32..=4).prop_map(f64::from), dim), dim + 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn planar_batch_matches_brute_force(rows in planar_cloud()) {
        let cloud = PointCloud::from_rows(2, &rows);
        let hull = batch_hull(cloud.view()).unwrap();
        prop_assert_eq!(lex_sorted(hull.vertices().to_rows()), brute_vertices_2d(&cloud));
    }

    #[test]
    fn incremental_equals_batch_on_lattice_points(rows in lattice_cloud(2), rows3 in lattice_cloud(3)) {
        for (dim, rows) in [(2, rows), (3, rows3)] {
            let cloud = PointCloud::from_rows(dim, &rows);
            let incremental = ConvexHull::from_points(cloud.view()).unwrap();
            match batch_hull(cloud.view()) {
                Ok(batch) => prop_assert_eq!(batch.sorted_vertices(), incremental.sorted_vertices()),
                Err(_) => prop_assert!(!incremental.is_full_dimensional()),
            }
        }
    }

    #[test]
    fn hull_is_idempotent(rows in spatial_cloud()) {
        let cloud = PointCloud::from_rows(3, &rows);
        let hull = batch_hull(cloud.view()).unwrap();
        let again = batch_hull(hull.vertices().view()).unwrap();
        prop_assert_eq!(again.sorted_vertices(), hull.sorted_vertices());
        let mut grown = hull.clone();
        for p in cloud.iter() {
            prop_assert!(!grown.insert(p));
            prop_assert!(hull.contains(p));
        }
        prop_assert_eq!(grown.sorted_vertices(), hull.sorted_vertices());
    }

    #[test]
    fn inradius_never_decreases_under_insertion(rows in planar_cloud(), extra in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 2), 1..20)) {
        let mut hull = ConvexHull::from_points(PointCloud::from_rows(2, &rows).view()).unwrap();
        let mut r = origin_inradius(&hull);
        for p in &extra {
            hull.insert(p);
            let next = origin_inradius(&hull);
            prop_assert!(next >= r - 1e-12, "{} after {}", next, r);
            r = next;
        }
    }

    #[test]
    fn functionals_scale_with_the_set(rows in spatial_cloud(), c in 0.01f64..100.0) {
        for dim in [2usize, 3] {
            let base: Vec<Vec<f64>> = rows.iter().map(|p| p[..dim].to_vec()).collect();
            let scaled: Vec<Vec<f64>> = base.iter().map(|p| p.iter().map(|v| v * c).collect()).collect();
            let (Ok(a), Ok(b)) = (batch_hull(PointCloud::from_rows(dim, &base).view()), batch_hull(PointCloud::from_rows(dim, &scaled).view())) else {
                continue;
            };
            let (fa, fb) = (hull_functionals(&a), hull_functionals(&b));
            let d = dim as i32;
            prop_assert!((fb.volume - c.powi(d) * fa.volume).abs() <= 1e-10 * fb.volume);
            prop_assert!((fb.surface - c.powi(d - 1) * fa.surface).abs() <= 1e-10 * fb.surface);
            prop_assert!((fb.diameter - c * fa.diameter).abs() <= 1e-10 * fb.diameter);
        }
    }

    #[test]
    fn hausdorff_is_a_symmetric_pseudometric(a in spatial_cloud(), b in spatial_cloud(), c in spatial_cloud()) {
        let h = |rows: &Vec<Vec<f64>>| batch_hull(PointCloud::from_rows(3, rows).view()).unwrap();
        let (ha, hb, hc) = (h(&a), h(&b), h(&c));
        let ab = hausdorff_distance(&ha, &hb).unwrap();
        prop_assert_eq!(ab, hausdorff_distance(&hb, &ha).unwrap());
        prop_assert_eq!(hausdorff_distance(&ha, &ha).unwrap(), 0.0);
        let bc = hausdorff_distance(&hb, &hc).unwrap();
        let ac = hausdorff_distance(&ha, &hc).unwrap();
        prop_assert!(ac <= ab + bc + 1e-9);
    }

    #[test]
    fn separator_certifies_exterior_points(rows in spatial_cloud(), x in prop::collection::vec(-15.0f64..15.0, 3)) {
        let cloud = PointCloud::from_rows(3, &rows);
        let hull = batch_hull(cloud.view()).unwrap();
        match separating_direction(cloud.view(), &x) {
            Some(u) => {
                let top = cloud.iter().map(|p| dot(&sub(p, &x), &u)).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(top <= 1e-9);
            }
            None => prop_assert!(hull.contains(&x)),
        }
    }
}
