use super::hull2::{batch_hull2, Hull2};
use super::hull3::{batch_hull3, Hull3};
use super::predicates::{cross3, sub3, to_p2, to_p3};
use crate::error::{Error, Result};
use crate::points::{dot, PointCloud, PointSet};

/// Compact convex set in the plane or in space, kept as its extreme points
/// plus boundary facets.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexHull {
    Planar(Hull2),
    Spatial(Hull3),
}

/// Supporting hyperplane {y : ⟨normal, y⟩ = offset} with unit outward normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl ConvexHull {
    pub fn empty(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(ConvexHull::Planar(Hull2::Empty)),
            3 => Ok(ConvexHull::Spatial(Hull3::Empty)),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// Hull of `points` by successive insertion.
    pub fn from_points(points: PointSet<'_>) -> Result<Self> {
        let mut hull = Self::empty(points.dim())?;
        for p in points.iter() {
            hull.insert(p);
        }
        Ok(hull)
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexHull::Planar(_) => 2,
            ConvexHull::Spatial(_) => 3,
        }
    }

    pub fn affine_dim(&self) -> usize {
        match self {
            ConvexHull::Planar(h) => h.affine_dim(),
            ConvexHull::Spatial(h) => h.affine_dim(),
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim()
    }

    /// Adds `x` in place; true iff `x` was strictly outside.
    pub fn insert(&mut self, x: &[f64]) -> bool {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            ConvexHull::Planar(h) => h.insert(to_p2(x)),
            ConvexHull::Spatial(h) => h.insert(to_p3(x)),
        }
    }

    /// Exact membership (interior or boundary).
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            ConvexHull::Planar(h) => h.contains(to_p2(x)),
            ConvexHull::Spatial(h) => h.contains(to_p3(x)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            ConvexHull::Planar(h) => match h {
                Hull2::Polygon(v) => v.len(),
                other => other.vertices().len(),
            },
            ConvexHull::Spatial(h) => h.vertices().len(),
        }
    }

    /// Extreme points. Planar polygons are listed counterclockwise.
    pub fn vertices(&self) -> PointCloud {
        match self {
            ConvexHull::Planar(h) => PointCloud::from_rows(2, &h.vertices()),
            ConvexHull::Spatial(h) => PointCloud::from_rows(3, &h.vertices()),
        }
    }

    /// Extreme points in lexicographic order, for set comparisons.
    pub fn sorted_vertices(&self) -> Vec<Vec<f64>> {
        let mut v = self.vertices().to_rows();
        v.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
        v
    }

    /// Boundary facets; empty unless the hull is full-dimensional.
    pub fn facets(&self) -> Vec<Facet> {
        match self {
            ConvexHull::Planar(Hull2::Polygon(v)) => {
                let h = v.len();
                (0..h)
                    .map(|i| {
                        let (a, b) = (v[i], v[(i + 1) % h]);
                        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                        let len = dx.hypot(dy);
                        let normal = vec![dy / len, -dx / len];
                        let offset = normal[0] * a[0] + normal[1] * a[1];
                        Facet { normal, offset }
                    })
                    .collect()
            }
            ConvexHull::Spatial(Hull3::Solid(poly)) => poly
                .faces()
                .map(|[a, b, c]| {
                    let n = cross3(sub3(b, a), sub3(c, a));
                    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                    let normal = vec![n[0] / len, n[1] / len, n[2] / len];
                    let offset = dot(&normal, &a);
                    Facet { normal, offset }
                })
                .collect(),
            _ => vec![],
        }
    }
}

/// Hull of the old vertex set plus `x`, and whether `x` was strictly outside.
pub fn incremental_insert(hull: &ConvexHull, x: &[f64]) -> (ConvexHull, bool) {
    let mut next = hull.clone();
    let grew = next.insert(x);
    (next, grew)
}

/// Exact hull of a full-dimensional point set in two or three dimensions.
pub fn batch_hull(points: PointSet<'_>) -> Result<ConvexHull> {
    let hull = match points.dim() {
        2 => {
            let pts: Vec<_> = points.iter().map(to_p2).collect();
            ConvexHull::Planar(batch_hull2(&pts))
        }
        3 => {
            let pts: Vec<_> = points.iter().map(to_p3).collect();
            ConvexHull::Spatial(batch_hull3(&pts))
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    if !hull.is_full_dimensional() {
        return Err(Error::DegenerateInput { affine_dim: hull.affine_dim(), dim: hull.dim() });
    }
    Ok(hull)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facets_of_unit_square() {
        let sq = PointCloud::from_rows(2, &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let h = batch_hull(sq.view()).unwrap();
        let f = h.facets();
        assert_eq!(f.len(), 4);
        for facet in &f {
            // centre is at distance 1/2 on the inner side of every edge
            let d = facet.offset - dot(&facet.normal, &[0.5, 0.5]);
            assert!((d - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn batch_rejects_degenerate_and_unsupported() {
        let line = PointCloud::from_rows(2, &[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]);
        assert_eq!(batch_hull(line.view()).unwrap_err(), Error::DegenerateInput { affine_dim: 1, dim: 2 });
        let four = PointCloud::from_rows(4, &[[0.0; 4]]);
        assert_eq!(batch_hull(four.view()).unwrap_err(), Error::UnsupportedDimension(4));
    }

    #[test]
    fn incremental_insert_returns_new_value() {
        let tri = PointCloud::from_rows(2, &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let h = batch_hull(tri.view()).unwrap();
        let (g, grew) = incremental_insert(&h, &[2.0, 0.0]);
        assert!(grew);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.sorted_vertices(), vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![2.0, 0.0]]);
    }
}
