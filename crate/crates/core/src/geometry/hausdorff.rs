use super::directions::DirectionSet;
use super::hull::ConvexHull;
use crate::error::{Error, Result};
use crate::points::dot;

/// h_K(u) = max over vertices of ⟨v, u⟩.
pub fn support_function(hull: &ConvexHull, u: &[f64]) -> f64 {
    hull.vertices()
        .iter()
        .map(|v| dot(v, u))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Hausdorff distance of two convex bodies, as the largest support-function
/// gap over the default direction set. A lower bound that tightens as the
/// directions densify.
pub fn hausdorff_distance(a: &ConvexHull, b: &ConvexHull) -> Result<f64> {
    hausdorff_distance_with(a, b, &DirectionSet::default_for(a.dim()))
}

pub fn hausdorff_distance_with(a: &ConvexHull, b: &ConvexHull, directions: &DirectionSet) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    if directions.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: directions.dim() });
    }
    let va = a.vertices();
    let vb = b.vertices();
    let support = |pts: &crate::points::PointCloud, u: &[f64]| pts.iter().map(|v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max);
    Ok(directions
        .iter()
        .map(|u| (support(&va, u) - support(&vb, u)).abs())
        .fold(0.0, f64::max))
}
