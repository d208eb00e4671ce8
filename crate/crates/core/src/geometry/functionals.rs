use serde::{Deserialize, Serialize};

use super::hull::ConvexHull;
use super::hull2::Hull2;
use super::hull3::Hull3;
use super::predicates::{cross3, dot3, sub3};
use crate::points::{distance, PointCloud};

/// Volume, surface measure and diameter of a hull. In the plane "volume" is
/// area and "surface" is perimeter. Degenerate hulls report zeros.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HullFunctionals {
    pub volume: f64,
    pub surface: f64,
    pub diameter: f64,
    pub degenerate: bool,
}

impl HullFunctionals {
    pub const DEGENERATE: HullFunctionals = HullFunctionals { volume: 0.0, surface: 0.0, diameter: 0.0, degenerate: true };
}

/// Largest pairwise distance among the points.
pub fn diameter(points: &PointCloud) -> f64 {
    let n = points.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            best = best.max(distance(points.point(i), points.point(j)));
        }
    }
    best
}

pub fn hull_functionals(hull: &ConvexHull) -> HullFunctionals {
    match hull {
        ConvexHull::Planar(Hull2::Polygon(v)) => {
            let h = v.len();
            let mut twice_area = 0.0;
            let mut perimeter = 0.0;
            for i in 0..h {
                let (a, b) = (v[i], v[(i + 1) % h]);
                twice_area += a[0] * b[1] - a[1] * b[0];
                perimeter += (b[0] - a[0]).hypot(b[1] - a[1]);
            }
            HullFunctionals {
                volume: 0.5 * twice_area,
                surface: perimeter,
                diameter: diameter(&hull.vertices()),
                degenerate: false,
            }
        }
        ConvexHull::Spatial(Hull3::Solid(poly)) => {
            let mut six_volume = 0.0;
            let mut twice_area = 0.0;
            for [a, b, c] in poly.faces() {
                six_volume += dot3(a, cross3(b, c));
                let n = cross3(sub3(b, a), sub3(c, a));
                twice_area += dot3(n, n).sqrt();
            }
            HullFunctionals {
                volume: six_volume / 6.0,
                surface: 0.5 * twice_area,
                diameter: diameter(&hull.vertices()),
                degenerate: false,
            }
        }
        _ => HullFunctionals::DEGENERATE,
    }
}
