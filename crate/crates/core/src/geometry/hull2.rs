//! Planar hulls: O(h) incremental insertion and Andrew's monotone chain.

use std::cmp::Ordering;

use super::predicates::{orient2d, P2};

#[derive(Debug, Clone, PartialEq)]
pub enum Hull2 {
    Empty,
    Point(P2),
    /// Collinear set, stored as its two extreme points.
    Segment(P2, P2),
    /// Counterclockwise, no three consecutive vertices collinear.
    Polygon(Vec<P2>),
}

fn lex(a: &P2, b: &P2) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

/// Axis on which the segment a-b has distinct coordinates.
fn segment_axis(a: P2, b: P2) -> usize {
    if a[0] != b[0] {
        0
    } else {
        1
    }
}

impl Hull2 {
    pub fn affine_dim(&self) -> usize {
        match self {
            Hull2::Empty | Hull2::Point(_) => 0,
            Hull2::Segment(..) => 1,
            Hull2::Polygon(_) => 2,
        }
    }

    pub fn vertices(&self) -> Vec<P2> {
        match self {
            Hull2::Empty => vec![],
            Hull2::Point(p) => vec![*p],
            Hull2::Segment(a, b) => vec![*a, *b],
            Hull2::Polygon(v) => v.clone(),
        }
    }

    /// Adds `x`; returns true iff `x` was strictly outside the previous hull.
    pub fn insert(&mut self, x: P2) -> bool {
        match self {
            Hull2::Empty => {
                *self = Hull2::Point(x);
                true
            }
            Hull2::Point(p) => {
                if *p == x {
                    false
                } else {
                    *self = Hull2::Segment(*p, x);
                    true
                }
            }
            Hull2::Segment(a, b) => {
                let (a, b) = (*a, *b);
                let o = orient2d(a, b, x);
                if o > 0.0 {
                    *self = Hull2::Polygon(vec![a, b, x]);
                    return true;
                }
                if o < 0.0 {
                    *self = Hull2::Polygon(vec![b, a, x]);
                    return true;
                }
                let ax = segment_axis(a, b);
                let (lo, hi) = if a[ax] < b[ax] { (a, b) } else { (b, a) };
                if x[ax] < lo[ax] {
                    *self = Hull2::Segment(x, hi);
                    true
                } else if x[ax] > hi[ax] {
                    *self = Hull2::Segment(lo, x);
                    true
                } else {
                    false
                }
            }
            Hull2::Polygon(v) => insert_polygon(v, x),
        }
    }

    /// Inside or on the boundary, decided exactly.
    pub fn contains(&self, x: P2) -> bool {
        match self {
            Hull2::Empty => false,
            Hull2::Point(p) => *p == x,
            Hull2::Segment(a, b) => {
                if orient2d(*a, *b, x) != 0.0 {
                    return false;
                }
                let ax = segment_axis(*a, *b);
                let (lo, hi) = if a[ax] < b[ax] { (a[ax], b[ax]) } else { (b[ax], a[ax]) };
                x[ax] >= lo && x[ax] <= hi
            }
            Hull2::Polygon(v) => {
                let h = v.len();
                (0..h).all(|i| orient2d(v[i], v[(i + 1) % h], x) >= 0.0)
            }
        }
    }
}

fn insert_polygon(v: &mut Vec<P2>, x: P2) -> bool {
    let h = v.len();
    let orient: Vec<f64> = (0..h).map(|i| orient2d(v[i], v[(i + 1) % h], x)).collect();
    // Start of the visible chain: an edge that sees x whose predecessor does not.
    let Some(mut s) = (0..h).find(|&i| orient[i] < 0.0 && orient[(i + h - 1) % h] >= 0.0) else {
        return false;
    };
    let mut t = s;
    let mut span = 1;
    while orient[(t + 1) % h] < 0.0 && span < h {
        t = (t + 1) % h;
        span += 1;
    }
    // Edges collinear with x next to the chain lose their shared vertex.
    while orient[(s + h - 1) % h] == 0.0 && span < h - 1 {
        s = (s + h - 1) % h;
        span += 1;
    }
    while orient[(t + 1) % h] == 0.0 && span < h - 1 {
        t = (t + 1) % h;
        span += 1;
    }
    // Keep v[t+1] .. v[s] (cyclically), then x.
    let mut out = Vec::with_capacity(h + 1);
    let mut i = (t + 1) % h;
    loop {
        out.push(v[i]);
        if i == s {
            break;
        }
        i = (i + 1) % h;
    }
    out.push(x);
    *v = out;
    true
}

/// Indices of the extreme points of `pts` in counterclockwise order, starting
/// from the lexicographically smallest. Collinear boundary points and
/// duplicates are dropped. For collinear input the two endpoints are returned;
/// for a single distinct point, one index.
pub fn monotone_chain(pts: &[P2]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| lex(&pts[i], &pts[j]).then(i.cmp(&j)));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for &i in &idx {
        while hull.len() >= 2 && orient2d(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0.0 {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in idx.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient2d(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    if hull.len() == 2 && pts[hull[0]] == pts[hull[1]] {
        hull.pop();
    }
    hull
}

/// Indices of the points not strictly inside the polygon spanned by the
/// extremes in eight directions. Only such points can be hull vertices.
fn extreme_filter(pts: &[P2]) -> Vec<usize> {
    let keys: [fn(&P2) -> f64; 4] = [|p| p[0], |p| p[1], |p| p[0] + p[1], |p| p[0] - p[1]];
    let mut extremes = Vec::with_capacity(8);
    for key in keys {
        let (mut lo, mut hi) = (0, 0);
        for (i, p) in pts.iter().enumerate() {
            if key(p) < key(&pts[lo]) {
                lo = i;
            }
            if key(p) > key(&pts[hi]) {
                hi = i;
            }
        }
        extremes.push(pts[lo]);
        extremes.push(pts[hi]);
    }
    let ring: Vec<P2> = monotone_chain(&extremes).into_iter().map(|i| extremes[i]).collect();
    if ring.len() < 3 {
        return (0..pts.len()).collect();
    }
    let h = ring.len();
    (0..pts.len())
        .filter(|&i| (0..h).any(|e| orient2d(ring[e], ring[(e + 1) % h], pts[i]) <= 0.0))
        .collect()
}

const FILTER_ABOVE: usize = 256;

pub fn batch_hull2(pts: &[P2]) -> Hull2 {
    let idx = if pts.len() > FILTER_ABOVE {
        let keep = extreme_filter(pts);
        let sub: Vec<P2> = keep.iter().map(|&i| pts[i]).collect();
        monotone_chain(&sub).into_iter().map(|j| keep[j]).collect()
    } else {
        monotone_chain(pts)
    };
    match idx.len() {
        0 => Hull2::Empty,
        1 => Hull2::Point(pts[idx[0]]),
        2 => Hull2::Segment(pts[idx[0]], pts[idx[1]]),
        _ => Hull2::Polygon(idx.into_iter().map(|i| pts[i]).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<P2>) -> Vec<P2> {
        v.sort_by(lex);
        v
    }

    #[test]
    fn filter_keeps_result_exact() {
        let mut pts = vec![];
        let mut x = 0.3f64;
        for k in 0..2000 {
            x = (x * 3.7 + 0.11).fract();
            pts.push([x * 10.0 - 5.0, ((k * 7919) % 1000) as f64 / 100.0 - 5.0]);
        }
        pts.extend([[5.0, 5.0], [5.0, 0.0], [-5.0, 5.0]]);
        let unfiltered = Hull2::Polygon(monotone_chain(&pts).into_iter().map(|i| pts[i]).collect());
        assert_eq!(batch_hull2(&pts), unfiltered);
    }

    #[test]
    fn interior_insert_does_not_grow() {
        let mut h = batch_hull2(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let before = h.clone();
        assert!(!h.insert([0.5, 0.5]));
        assert!(!h.insert([1.0, 0.5]));
        assert!(!h.insert([1.0, 1.0]));
        assert_eq!(h, before);
    }

    #[test]
    fn absorbs_collinear_vertex() {
        let mut h = batch_hull2(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(h.insert([2.0, 0.0]));
        assert_eq!(sorted(h.vertices()), vec![[0.0, 0.0], [0.0, 1.0], [2.0, 0.0]]);
        let oracle = batch_hull2(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0, 0.0]]);
        assert_eq!(sorted(oracle.vertices()), sorted(h.vertices()));
    }

    #[test]
    fn degenerate_phases() {
        let mut h = Hull2::Empty;
        assert!(h.insert([0.0, 0.0]));
        assert!(!h.insert([0.0, 0.0]));
        assert!(h.insert([1.0, 0.0]));
        assert!(!h.insert([0.5, 0.0]));
        assert!(h.insert([3.0, 0.0]));
        assert!(h.insert([-1.0, 0.0]));
        assert_eq!(h, Hull2::Segment([-1.0, 0.0], [3.0, 0.0]));
        assert!(h.insert([0.0, -2.0]));
        assert_eq!(h.affine_dim(), 2);
        assert!(h.contains([0.0, -1.0]));
        assert!(!h.contains([0.0, 1.0]));
    }

    #[test]
    fn vertical_segment() {
        let mut h = Hull2::Segment([0.0, 0.0], [0.0, 1.0]);
        assert!(!h.insert([0.0, 0.5]));
        assert!(h.insert([0.0, -1.0]));
        assert_eq!(h, Hull2::Segment([0.0, -1.0], [0.0, 1.0]));
    }

    #[test]
    fn polygon_is_ccw() {
        let mut h = Hull2::Empty;
        for p in [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0], [2.0, 0.5]] {
            h.insert(p);
        }
        let v = h.vertices();
        let n = v.len();
        for i in 0..n {
            assert!(orient2d(v[i], v[(i + 1) % n], v[(i + 2) % n]) > 0.0);
        }
        assert_eq!(n, 5);
    }

    #[test]
    fn chain_degenerate_inputs() {
        assert!(monotone_chain(&[]).is_empty());
        assert_eq!(monotone_chain(&[[1.0, 1.0], [1.0, 1.0]]).len(), 1);
        let line = [[0.0, 0.0], [2.0, 2.0], [1.0, 1.0], [3.0, 3.0]];
        let idx = monotone_chain(&line);
        assert_eq!(idx, vec![0, 3]);
    }
}
