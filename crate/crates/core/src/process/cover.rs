//! Orthant first-hit times, cover time and origin-interior time of a path,
//! plus the endpoint-interior test computed along two independent routes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_origin_interior, quadrant_of, separating_direction, ConvexHull, MAX_QUADRANT_DIM};
use crate::paths::{reverse_path, VectorPath};
use crate::points::PointSet;

/// Largest dimension [`quadrant_cover`] accepts by default.
pub const DEFAULT_MAX_COVER_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRecord {
    /// First k ≥ 1 with X(t_k) in the open orthant, indexed by
    /// [`QuadrantIndex::index`](crate::geometry::QuadrantIndex::index).
    pub first_hit: Vec<Option<usize>>,
    /// First k by which every open orthant has been visited.
    pub cover_index: Option<usize>,
    /// First k with the origin interior to conv{X(t_0), ..., X(t_k)}.
    pub origin_interior_index: Option<usize>,
}

pub fn quadrant_cover(path: &VectorPath) -> Result<CoverRecord> {
    cover_points(path.samples.view(), DEFAULT_MAX_COVER_DIM)
}

/// [`quadrant_cover`] over raw samples, with an explicit dimension cap.
pub fn cover_points(points: PointSet<'_>, max_dim: usize) -> Result<CoverRecord> {
    let d = points.dim();
    if d == 0 || d > max_dim.min(MAX_QUADRANT_DIM) {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut first_hit = vec![None; 1 << d];
    let mut remaining = first_hit.len();
    let mut cover_index = None;
    for (k, p) in points.iter().enumerate().skip(1) {
        if let Some(q) = quadrant_of(p) {
            let slot = &mut first_hit[q.index()];
            if slot.is_none() {
                *slot = Some(k);
                remaining -= 1;
                if remaining == 0 {
                    cover_index = Some(k);
                    break;
                }
            }
        }
    }
    Ok(CoverRecord { first_hit, cover_index, origin_interior_index: origin_interior_index(points) })
}

/// First k with the origin interior to the hull of samples `0..=k`.
pub fn origin_interior_index(points: PointSet<'_>) -> Option<usize> {
    match points.dim() {
        2 | 3 => {
            let mut hull = ConvexHull::empty(points.dim()).ok()?;
            for (k, p) in points.iter().enumerate() {
                if hull.insert(p) && hull.is_full_dimensional() && is_origin_interior(&hull) {
                    return Some(k);
                }
            }
            None
        }
        d => {
            // Interiority is monotone in k, so bisect on prefixes.
            let origin = vec![0.0; d];
            let interior = |k: usize| separating_direction(points.prefix(k + 1), &origin).is_none();
            let last = points.len().checked_sub(1)?;
            if !interior(last) {
                return None;
            }
            let (mut lo, mut hi) = (0, last);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if interior(mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Some(lo)
        }
    }
}

/// Endpoint interiority by both routes: a direct certificate search around
/// X(t_n), and origin interiority of the reversed path X(t_n) − X(t_{n−k}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointRoutes {
    pub direct: bool,
    pub reversed: bool,
}

impl EndpointRoutes {
    pub fn agree(self) -> bool {
        self.direct == self.reversed
    }
}

pub fn endpoint_interior_routes(path: &VectorPath) -> EndpointRoutes {
    let direct = separating_direction(path.samples.view(), path.endpoint()).is_none();
    let reversed = reverse_path(path);
    let reversed = origin_interior_index(reversed.samples.view()).is_some();
    EndpointRoutes { direct, reversed }
}

/// Whether X(t_n) is interior to the hull of the whole path. Fails with
/// [`Error::RouteMismatch`] if the two routes disagree.
pub fn endpoint_interior(path: &VectorPath) -> Result<bool> {
    let routes = endpoint_interior_routes(path);
    if routes.agree() {
        Ok(routes.direct)
    } else {
        Err(Error::RouteMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{scale_path, HurstIndex, SpdMatrix, TimeGrid};
    use crate::points::PointCloud;

    fn path(rows: &[[f64; 2]]) -> VectorPath {
        VectorPath::from_samples(
            TimeGrid::new(1.0, rows.len() - 1).unwrap(),
            PointCloud::from_rows(2, rows),
            HurstIndex::new(0.5).unwrap(),
            SpdMatrix::identity(2),
        )
        .unwrap()
    }

    #[test]
    fn unit_square_walk() {
        // the origin sits on the diagonal (−1,−1)–(1,1) of the first triangle,
        // so it becomes interior only with the fourth corner
        let p = path(&[[0.0, 0.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]);
        let rec = quadrant_cover(&p).unwrap();
        assert_eq!(rec.first_hit, vec![Some(3), Some(4), Some(2), Some(1)]);
        assert_eq!(rec.cover_index, Some(4));
        assert_eq!(rec.origin_interior_index, Some(4));
    }

    #[test]
    fn interior_before_cover() {
        let p = path(&[[0.0, 0.0], [2.0, 1.0], [-1.0, 1.0], [-1.0, -3.0], [1.0, -1.0]]);
        let rec = quadrant_cover(&p).unwrap();
        assert_eq!(rec.cover_index, Some(4));
        assert_eq!(rec.origin_interior_index, Some(3));
    }

    #[test]
    fn missing_quadrant() {
        let p = path(&[[0.0, 0.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, 0.5], [2.0, 3.0]]);
        let rec = quadrant_cover(&p).unwrap();
        assert_eq!(rec.cover_index, None);
        assert_eq!(rec.first_hit.iter().filter(|h| h.is_none()).count(), 2);
        assert_eq!(rec.origin_interior_index, None);
    }

    #[test]
    fn axis_points_hit_nothing() {
        let p = path(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]);
        let rec = quadrant_cover(&p).unwrap();
        assert!(rec.first_hit.iter().all(Option::is_none));
        assert_eq!(rec.origin_interior_index, Some(4));
    }

    #[test]
    fn cone_invariance() {
        let p = path(&[[0.0, 0.0], [2.0, 1.0], [-1.0, 1.0], [-1.0, -3.0], [1.0, -1.0]]);
        let base = quadrant_cover(&p).unwrap();
        for c in [1e-3, 0.5, 3.0, 1e4] {
            let s = scale_path(&p, c, p.hurst).unwrap();
            assert_eq!(quadrant_cover(&s).unwrap(), base);
        }
    }

    #[test]
    fn endpoint_at_running_max() {
        let p = path(&[[0.0, 0.0], [1.0, 2.0], [-1.0, 1.0], [0.5, -2.0], [3.0, 0.0]]);
        assert_eq!(endpoint_interior_routes(&p), EndpointRoutes { direct: false, reversed: false });
        assert!(!endpoint_interior(&p).unwrap());
    }

    #[test]
    fn endpoint_at_centroid() {
        let p = path(&[[0.0, 0.0], [3.0, 0.0], [0.0, 3.0], [1.0, 1.0]]);
        assert_eq!(endpoint_interior_routes(&p), EndpointRoutes { direct: true, reversed: true });
    }

    #[test]
    fn two_steps_never_interior() {
        let p = path(&[[0.0, 0.0], [1.0, 0.3], [0.2, 1.0]]);
        assert!(!endpoint_interior(&p).unwrap());
    }

    #[test]
    fn bisection_matches_scan_in_four_dims() {
        let mut rows = vec![vec![0.0; 4]];
        for k in 1..40usize {
            rows.push((0..4).map(|i| (((k * 37 + i * 11) % 17) as f64 - 8.0) / (1.0 + i as f64)).collect());
        }
        let pts = PointCloud::from_rows(4, &rows);
        let scan = (0..rows.len()).find(|&k| separating_direction(pts.view().prefix(k + 1), &[0.0; 4]).is_none());
        assert_eq!(origin_interior_index(pts.view()), scan);
        assert!(scan.is_some());
    }

    #[test]
    fn dimension_cap() {
        let pts = PointCloud::from_rows(7, &[[0.0; 7]]);
        assert!(cover_points(pts.view(), DEFAULT_MAX_COVER_DIM).is_err());
    }
}
