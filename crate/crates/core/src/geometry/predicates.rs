//! Exact-sign orientation tests (adaptive precision).

use robust::{Coord, Coord3D};

pub type P2 = [f64; 2];
pub type P3 = [f64; 3];

/// Positive iff a, b, c turn counterclockwise; zero iff collinear.
#[inline]
pub fn orient2d(a: P2, b: P2, c: P2) -> f64 {
    robust::orient2d(Coord { x: a[0], y: a[1] }, Coord { x: b[0], y: b[1] }, Coord { x: c[0], y: c[1] })
}

/// Positive iff `d` lies on the inner side of the face (a, b, c), where the
/// face is counterclockwise when seen from outside. Zero iff coplanar.
#[inline]
pub fn orient3d(a: P3, b: P3, c: P3, d: P3) -> f64 {
    let k = |p: P3| Coord3D { x: p[0], y: p[1], z: p[2] };
    robust::orient3d(k(a), k(b), k(c), k(d))
}

/// Exact collinearity of three points in space: every coordinate-plane
/// projection is collinear.
pub fn collinear3(a: P3, b: P3, c: P3) -> bool {
    const PLANES: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];
    PLANES
        .iter()
        .all(|&(i, j)| orient2d([a[i], a[j]], [b[i], b[j]], [c[i], c[j]]) == 0.0)
}

pub fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cross3(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn to_p2(p: &[f64]) -> P2 {
    [p[0], p[1]]
}

pub fn to_p3(p: &[f64]) -> P3 {
    [p[0], p[1], p[2]]
}
