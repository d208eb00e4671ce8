//! Interior tests for a point against the hull of a finite set.
//!
//! In two and three dimensions the exact hull gives the signed distance from
//! the point to the nearest facet plane. In any dimension,
//! [`separating_direction`] decides interiority through a certificate: x is
//! not interior to conv(S) iff some u ≠ 0 has ⟨p − x, u⟩ ≤ 0 for every p ∈ S.
//! The certificate search checks affine rank, then a few probe directions,
//! then the program
//!
//! ```text
//! max s   s.t.  Σ λ_i (p_i − x) = 0,  Σ λ_i = 1,  λ_i ≥ s
//! ```
//!
//! whose optimum is positive exactly when x is a strictly positive convex
//! combination of S. Its dual variables give the separator otherwise.

use nalgebra::DMatrix;

use super::directions::DirectionSet;
use super::functionals::diameter;
use super::hull::{batch_hull, ConvexHull};
use super::lp::{maximize, LpOutcome};
use crate::error::{Error, Result};
use crate::points::{dot, norm, PointCloud, PointSet};

/// "Interior" means inradius above this multiple of the hull diameter.
pub const INTERIOR_MARGIN: f64 = 1e-12;

/// Threshold on the optimal minimum weight of the certificate program.
const WEIGHT_TOL: f64 = 1e-12;

/// Above this many points in two or three dimensions the certificate search
/// runs on the hull vertices only.
const REDUCE_ABOVE: usize = 64;

/// Signed distance from `x` to the nearest facet plane, positive iff `x` is
/// strictly inside.
pub fn inradius_at(hull: &ConvexHull, x: &[f64]) -> Result<f64> {
    if !hull.is_full_dimensional() {
        return Err(Error::DegenerateInput { affine_dim: hull.affine_dim(), dim: hull.dim() });
    }
    Ok(hull
        .facets()
        .iter()
        .map(|f| f.offset - dot(&f.normal, x))
        .fold(f64::INFINITY, f64::min))
}

/// [`inradius_at`] the origin; a degenerate hull reports 0 (not interior).
pub fn origin_inradius(hull: &ConvexHull) -> f64 {
    inradius_at(hull, &vec![0.0; hull.dim()]).unwrap_or(0.0)
}

/// Whether `x` is interior with the float-robust margin.
pub fn is_interior(hull: &ConvexHull, x: &[f64]) -> bool {
    match inradius_at(hull, x) {
        Ok(r) => r > INTERIOR_MARGIN * diameter(&hull.vertices()),
        Err(_) => false,
    }
}

pub fn is_origin_interior(hull: &ConvexHull) -> bool {
    is_interior(hull, &vec![0.0; hull.dim()])
}

/// Origin inradius of conv(points) in any dimension. Exact-hull value in two
/// and three dimensions. In higher dimensions the value is non-positive when
/// a separator exists, otherwise the minimum support over the default
/// direction set (an upper bound on the true inradius).
pub fn origin_inradius_points(points: PointSet<'_>) -> f64 {
    let d = points.dim();
    if d == 2 || d == 3 {
        return batch_hull(points).map(|h| origin_inradius(&h)).unwrap_or(0.0);
    }
    let origin = vec![0.0; d];
    if let Some(u) = separating_direction(points, &origin) {
        return support(points, &u).min(0.0);
    }
    DirectionSet::default_for(d)
        .iter()
        .map(|u| support(points, u))
        .fold(f64::INFINITY, f64::min)
}

fn support(points: PointSet<'_>, u: &[f64]) -> f64 {
    points.iter().map(|p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max)
}

fn unit(mut v: Vec<f64>) -> Vec<f64> {
    let n = norm(&v);
    v.iter_mut().for_each(|c| *c /= n);
    v
}

/// A unit `u` with ⟨p − x, u⟩ ≤ tolerance for all `p` (x not interior), or
/// `None` when x is certified interior to conv(points).
pub fn separating_direction(points: PointSet<'_>, x: &[f64]) -> Option<Vec<f64>> {
    let d = points.dim();
    assert_eq!(x.len(), d, "query point has wrong dimension");
    let mut first_axis = vec![0.0; d];
    first_axis[0] = 1.0;
    if points.len() <= d {
        // Fewer than d + 1 points cannot surround anything.
        return Some(affine_normal(points, x).unwrap_or(first_axis));
    }

    let reduced;
    let points = if (d == 2 || d == 3) && points.len() > REDUCE_ABOVE {
        match batch_hull(points) {
            Ok(h) => {
                reduced = h.vertices();
                reduced.view()
            }
            Err(_) => points,
        }
    } else {
        points
    };

    let diffs: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    let radius = diffs.iter().map(|q| norm(q)).fold(0.0, f64::max);
    if radius == 0.0 {
        return Some(first_axis);
    }
    let diffs: Vec<Vec<f64>> = diffs.into_iter().map(|q| q.iter().map(|v| v / radius).collect()).collect();
    let tol = 1e-12;

    if let Some(u) = affine_normal(points, x) {
        return Some(u);
    }

    for u in DirectionSet::uniform(d, 8 * d).iter() {
        let s = diffs.iter().map(|q| dot(q, u)).fold(f64::NEG_INFINITY, f64::max);
        if s <= tol {
            return Some(u.to_vec());
        }
    }

    // Columns: λ-excess μ_i (one per point), s⁺, s⁻. Rows: d balance rows, 1 mass row.
    let n = diffs.len();
    let cols = n + 2;
    let rows = d + 1;
    let mut a = vec![0.0; rows * cols];
    let mut total = vec![0.0; d];
    for q in &diffs {
        for j in 0..d {
            total[j] += q[j];
        }
    }
    for (i, q) in diffs.iter().enumerate() {
        for j in 0..d {
            a[j * cols + i] = q[j];
        }
        a[d * cols + i] = 1.0;
    }
    for j in 0..d {
        a[j * cols + n] = total[j];
        a[j * cols + n + 1] = -total[j];
    }
    a[d * cols + n] = n as f64;
    a[d * cols + n + 1] = -(n as f64);
    let mut b = vec![0.0; rows];
    b[d] = 1.0;
    let mut c = vec![0.0; cols];
    c[n] = 1.0;
    c[n + 1] = -1.0;

    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, duals, .. } => {
            if value > WEIGHT_TOL {
                None
            } else {
                let u: Vec<f64> = duals[..d].iter().map(|v| -v).collect();
                if norm(&u) > 0.0 {
                    Some(unit(u))
                } else {
                    Some(first_axis)
                }
            }
        }
        // Full affine rank makes the program feasible and bounded; reaching
        // here means numerical trouble, so report "not certified interior".
        _ => Some(first_axis),
    }
}

/// If `points` lie in a hyperplane, its unit normal oriented so that
/// ⟨p − x, u⟩ ≤ 0.
fn affine_normal(points: PointSet<'_>, x: &[f64]) -> Option<Vec<f64>> {
    let d = points.dim();
    let n = points.len();
    if n == 0 {
        return None;
    }
    let base = points.point(0);
    let scale = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    let mut rows = PointCloud::with_capacity(d, n.max(d));
    for p in points.iter() {
        let r: Vec<f64> = p.iter().zip(base).map(|(a, b)| if scale > 0.0 { (a - b) / scale } else { 0.0 }).collect();
        rows.push(&r);
    }
    while rows.len() < d {
        rows.push(&vec![0.0; d]);
    }
    let m = DMatrix::from_row_slice(rows.len(), d, rows.as_flat());
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let (min_idx, &min_sv) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    let max_sv = svd.singular_values.iter().fold(0.0f64, |m, v| m.max(*v));
    if max_sv > 0.0 && min_sv > 1e-10 * max_sv {
        return None;
    }
    let mut u: Vec<f64> = v_t.row(min_idx).iter().copied().collect();
    let level: f64 = base.iter().zip(x).zip(&u).map(|((b, xx), ui)| (b - xx) * ui).sum();
    if level > 0.0 {
        u.iter_mut().for_each(|v| *v = -*v);
    }
    Some(unit(u))
}
