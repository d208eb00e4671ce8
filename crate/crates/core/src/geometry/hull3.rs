//! Spatial hulls: incremental insertion with horizon stitching, and a batch
//! builder with per-face conflict lists.
//!
//! Faces are triangles oriented counterclockwise when seen from outside. A
//! point exactly coplanar with a face counts as seeing that face only when it
//! strictly sees some other face; points on the boundary never grow the hull.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use super::hull2::monotone_chain;
use super::predicates::{collinear3, cross3, orient3d, sub3, P2, P3};

#[derive(Debug, Clone, PartialEq)]
pub enum Hull3 {
    Empty,
    Point(P3),
    Segment(P3, P3),
    Planar(Planar),
    Solid(Polytope),
}

/// Coplanar point set, stored as its extreme points in counterclockwise order
/// of the projection that drops coordinate `drop`.
#[derive(Debug, Clone, PartialEq)]
pub struct Planar {
    reference: [P3; 3],
    drop: usize,
    vertices: Vec<P3>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    points: Vec<P3>,
    faces: Vec<[usize; 3]>,
}

fn lex3(a: &P3, b: &P3) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
}

fn dist2(a: P3, b: P3) -> f64 {
    let d = sub3(a, b);
    d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
}

fn segment_axis(a: P3, b: P3) -> usize {
    (0..3).find(|&i| a[i] != b[i]).unwrap_or(0)
}

impl Planar {
    fn new(a: P3, b: P3, c: P3) -> Self {
        let n = cross3(sub3(b, a), sub3(c, a));
        let drop = (0..3).max_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs())).unwrap_or(2);
        let mut p = Planar { reference: [a, b, c], drop, vertices: vec![] };
        let pts = [a, b, c];
        let proj: Vec<P2> = pts.iter().map(|&q| p.project(q)).collect();
        p.vertices = monotone_chain(&proj).into_iter().map(|i| pts[i]).collect();
        p
    }

    fn project(&self, p: P3) -> P2 {
        match self.drop {
            0 => [p[1], p[2]],
            1 => [p[0], p[2]],
            _ => [p[0], p[1]],
        }
    }

    fn is_coplanar(&self, x: P3) -> bool {
        let [a, b, c] = self.reference;
        orient3d(a, b, c, x) == 0.0
    }

    fn insert(&mut self, x: P3) -> bool {
        let mut pts = self.vertices.clone();
        pts.push(x);
        let proj: Vec<P2> = pts.iter().map(|&q| self.project(q)).collect();
        let idx = monotone_chain(&proj);
        let grew = idx.contains(&(pts.len() - 1));
        if grew {
            self.vertices = idx.into_iter().map(|i| pts[i]).collect();
        }
        grew
    }

    fn contains(&self, x: P3) -> bool {
        if !self.is_coplanar(x) {
            return false;
        }
        let v: Vec<P2> = self.vertices.iter().map(|&q| self.project(q)).collect();
        let xp = self.project(x);
        let h = v.len();
        (0..h).all(|i| super::predicates::orient2d(v[i], v[(i + 1) % h], xp) >= 0.0)
    }
}

fn oriented(points: &[P3], a: usize, b: usize, c: usize, inside: P3) -> [usize; 3] {
    if orient3d(points[a], points[b], points[c], inside) > 0.0 {
        [a, b, c]
    } else {
        [a, c, b]
    }
}

impl Polytope {
    /// Convex polygon `base` (cyclic order) plus an apex off its plane.
    fn pyramid(base: &[P3], apex: P3) -> Self {
        let m = base.len();
        let mut points = base.to_vec();
        points.push(apex);
        let up = orient3d(base[0], base[1], base[2], apex) > 0.0;
        let mut faces = Vec::with_capacity(2 * m);
        for i in 1..m - 1 {
            faces.push(if up { [0, i, i + 1] } else { [0, i + 1, i] });
        }
        for i in 0..m {
            let j = (i + 1) % m;
            // base edge direction is i -> j when `up`, j -> i otherwise
            faces.push(if up { [j, i, m] } else { [i, j, m] });
        }
        Polytope { points, faces }
    }

    fn tetrahedron(points: &[P3], idx: [usize; 4]) -> Vec<[usize; 3]> {
        let [a, b, c, d] = idx;
        vec![
            oriented(points, a, b, c, points[d]),
            oriented(points, a, b, d, points[c]),
            oriented(points, a, c, d, points[b]),
            oriented(points, b, c, d, points[a]),
        ]
    }

    pub fn faces(&self) -> impl Iterator<Item = [P3; 3]> + '_ {
        self.faces
            .iter()
            .map(|f| [self.points[f[0]], self.points[f[1]], self.points[f[2]]])
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> Vec<P3> {
        let mut used = vec![false; self.points.len()];
        for f in &self.faces {
            for &v in f {
                used[v] = true;
            }
        }
        self.points
            .iter()
            .zip(used)
            .filter_map(|(p, u)| u.then_some(*p))
            .collect()
    }

    fn side(&self, f: [usize; 3], x: P3) -> f64 {
        orient3d(self.points[f[0]], self.points[f[1]], self.points[f[2]], x)
    }

    pub fn contains(&self, x: P3) -> bool {
        self.faces.iter().all(|&f| self.side(f, x) >= 0.0)
    }

    fn insert(&mut self, x: P3) -> bool {
        let sides: Vec<f64> = self.faces.iter().map(|&f| self.side(f, x)).collect();
        if sides.iter().all(|&s| s >= 0.0) {
            return false;
        }
        let visible: Vec<bool> = sides.iter().map(|&s| s <= 0.0).collect();
        let mut visible_edges = HashSet::new();
        for (f, _) in self.faces.iter().zip(&visible).filter(|(_, v)| **v) {
            for e in 0..3 {
                visible_edges.insert((f[e], f[(e + 1) % 3]));
            }
        }
        let apex = self.points.len();
        self.points.push(x);
        let mut faces = Vec::with_capacity(self.faces.len() + 4);
        let mut horizon = Vec::new();
        for (f, vis) in self.faces.iter().zip(&visible) {
            if !vis {
                faces.push(*f);
                continue;
            }
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                if !visible_edges.contains(&(b, a)) {
                    horizon.push([a, b, apex]);
                }
            }
        }
        faces.extend(horizon);
        self.faces = faces;
        if self.points.len() > 2 * self.faces.len() + 32 {
            self.compact();
        }
        true
    }

    fn compact(&mut self) {
        let mut remap = vec![usize::MAX; self.points.len()];
        let mut points = Vec::new();
        for f in &mut self.faces {
            for v in f.iter_mut() {
                if remap[*v] == usize::MAX {
                    remap[*v] = points.len();
                    points.push(self.points[*v]);
                }
                *v = remap[*v];
            }
        }
        self.points = points;
    }

    /// Every directed edge has its reverse, and V − E + F = 2.
    pub fn is_closed_sphere(&self) -> bool {
        let mut edges = HashSet::new();
        for f in &self.faces {
            for e in 0..3 {
                if !edges.insert((f[e], f[(e + 1) % 3])) {
                    return false;
                }
            }
        }
        if edges.iter().any(|&(a, b)| !edges.contains(&(b, a))) {
            return false;
        }
        let v = self.vertices().len() as i64;
        let e = (edges.len() / 2) as i64;
        let f = self.faces.len() as i64;
        v - e + f == 2
    }
}

impl Hull3 {
    pub fn affine_dim(&self) -> usize {
        match self {
            Hull3::Empty | Hull3::Point(_) => 0,
            Hull3::Segment(..) => 1,
            Hull3::Planar(_) => 2,
            Hull3::Solid(_) => 3,
        }
    }

    pub fn vertices(&self) -> Vec<P3> {
        match self {
            Hull3::Empty => vec![],
            Hull3::Point(p) => vec![*p],
            Hull3::Segment(a, b) => vec![*a, *b],
            Hull3::Planar(p) => p.vertices.clone(),
            Hull3::Solid(p) => p.vertices(),
        }
    }

    pub fn insert(&mut self, x: P3) -> bool {
        match self {
            Hull3::Empty => {
                *self = Hull3::Point(x);
                true
            }
            Hull3::Point(p) => {
                if *p == x {
                    return false;
                }
                *self = Hull3::Segment(*p, x);
                true
            }
            Hull3::Segment(a, b) => {
                let (a, b) = (*a, *b);
                if !collinear3(a, b, x) {
                    *self = Hull3::Planar(Planar::new(a, b, x));
                    return true;
                }
                let ax = segment_axis(a, b);
                let (lo, hi) = if a[ax] < b[ax] { (a, b) } else { (b, a) };
                if x[ax] < lo[ax] {
                    *self = Hull3::Segment(x, hi);
                    true
                } else if x[ax] > hi[ax] {
                    *self = Hull3::Segment(lo, x);
                    true
                } else {
                    false
                }
            }
            Hull3::Planar(p) => {
                if p.is_coplanar(x) {
                    return p.insert(x);
                }
                *self = Hull3::Solid(Polytope::pyramid(&p.vertices, x));
                true
            }
            Hull3::Solid(p) => p.insert(x),
        }
    }

    pub fn contains(&self, x: P3) -> bool {
        match self {
            Hull3::Empty => false,
            Hull3::Point(p) => *p == x,
            Hull3::Segment(a, b) => {
                if !collinear3(*a, *b, x) {
                    return false;
                }
                let ax = segment_axis(*a, *b);
                let (lo, hi) = if a[ax] < b[ax] { (a[ax], b[ax]) } else { (b[ax], a[ax]) };
                x[ax] >= lo && x[ax] <= hi
            }
            Hull3::Planar(p) => p.contains(x),
            Hull3::Solid(p) => p.contains(x),
        }
    }
}

struct ConflictFace {
    v: [usize; 3],
    conflicts: Vec<usize>,
    alive: bool,
}

/// Hull of `input` built from an initial tetrahedron, assigning every
/// outside point to one face it sees and expanding faces in creation order.
/// Falls back to incremental insertion when the input is not full-dimensional.
pub fn batch_hull3(input: &[P3]) -> Hull3 {
    let mut pts = input.to_vec();
    pts.sort_by(lex3);
    pts.dedup();
    let Some(simplex) = initial_simplex(&pts) else {
        let mut h = Hull3::Empty;
        for &p in &pts {
            h.insert(p);
        }
        return h;
    };

    let mut faces: Vec<ConflictFace> = Polytope::tetrahedron(&pts, simplex)
        .into_iter()
        .map(|v| ConflictFace { v, conflicts: vec![], alive: true })
        .collect();
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for (id, f) in faces.iter().enumerate() {
        for e in 0..3 {
            edges.insert((f.v[e], f.v[(e + 1) % 3]), id);
        }
    }
    let side = |f: [usize; 3], p: usize| orient3d(pts[f[0]], pts[f[1]], pts[f[2]], pts[p]);

    for p in 0..pts.len() {
        if simplex.contains(&p) {
            continue;
        }
        if let Some(f) = faces.iter_mut().find(|f| side(f.v, p) < 0.0) {
            f.conflicts.push(p);
        }
    }

    let mut fid = 0;
    while fid < faces.len() {
        if !faces[fid].alive || faces[fid].conflicts.is_empty() {
            fid += 1;
            continue;
        }
        let eye = *faces[fid]
            .conflicts
            .iter()
            .min_by(|&&a, &&b| side(faces[fid].v, a).total_cmp(&side(faces[fid].v, b)).then(a.cmp(&b)))
            .expect("non-empty conflict list");

        // Visible region: connected faces the eye sees or is coplanar with.
        let mut visible = vec![fid];
        let mut mark: HashSet<usize> = HashSet::from([fid]);
        let mut cursor = 0;
        while cursor < visible.len() {
            let f = faces[visible[cursor]].v;
            cursor += 1;
            for e in 0..3 {
                let Some(&nb) = edges.get(&(f[(e + 1) % 3], f[e])) else { continue };
                if faces[nb].alive && !mark.contains(&nb) && side(faces[nb].v, eye) <= 0.0 {
                    mark.insert(nb);
                    visible.push(nb);
                }
            }
        }

        let mut horizon = Vec::new();
        let mut orphans = Vec::new();
        for &id in &visible {
            let f = faces[id].v;
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                let across = edges.get(&(b, a)).copied();
                if across.is_none_or(|nb| !mark.contains(&nb)) {
                    horizon.push((a, b));
                }
            }
        }
        for &id in &visible {
            let f = faces[id].v;
            for e in 0..3 {
                edges.remove(&(f[e], f[(e + 1) % 3]));
            }
            faces[id].alive = false;
            orphans.extend(faces[id].conflicts.drain(..).filter(|&p| p != eye));
        }
        let first_new = faces.len();
        for (a, b) in horizon {
            let v = [a, b, eye];
            for e in 0..3 {
                edges.insert((v[e], v[(e + 1) % 3]), faces.len());
            }
            faces.push(ConflictFace { v, conflicts: vec![], alive: true });
        }
        for p in orphans {
            if let Some(f) = faces[first_new..].iter_mut().find(|f| side(f.v, p) < 0.0) {
                f.conflicts.push(p);
            }
        }
        fid += 1;
    }

    let mut poly = Polytope {
        points: pts.clone(),
        faces: faces.iter().filter(|f| f.alive).map(|f| f.v).collect(),
    };
    poly.compact();
    Hull3::Solid(poly)
}

fn initial_simplex(pts: &[P3]) -> Option<[usize; 4]> {
    if pts.len() < 4 {
        return None;
    }
    let p0 = pts[0];
    let i1 = (1..pts.len()).max_by(|&a, &b| dist2(pts[a], p0).total_cmp(&dist2(pts[b], p0)))?;
    let p1 = pts[i1];
    let area = |i: usize| {
        let c = cross3(sub3(p1, p0), sub3(pts[i], p0));
        c[0] * c[0] + c[1] * c[1] + c[2] * c[2]
    };
    let i2 = (0..pts.len())
        .filter(|&i| i != 0 && i != i1 && !collinear3(p0, p1, pts[i]))
        .max_by(|&a, &b| area(a).total_cmp(&area(b)))?;
    let p2 = pts[i2];
    let i3 = (0..pts.len())
        .filter(|&i| orient3d(p0, p1, p2, pts[i]) != 0.0)
        .max_by(|&a, &b| {
            orient3d(p0, p1, p2, pts[a])
                .abs()
                .total_cmp(&orient3d(p0, p1, p2, pts[b]).abs())
        })?;
    Some([0, i1, i2, i3])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<P3> {
        let mut v = vec![];
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push([x, y, z]);
                }
            }
        }
        v
    }

    fn sorted(mut v: Vec<P3>) -> Vec<P3> {
        v.sort_by(lex3);
        v
    }

    #[test]
    fn cube_incremental_and_batch() {
        let mut h = Hull3::Empty;
        for p in cube() {
            assert!(h.insert(p));
        }
        assert!(!h.insert([0.5, 0.5, 0.5]));
        assert!(!h.insert([0.5, 0.5, 1.0]));
        let Hull3::Solid(ref poly) = h else { panic!("expected solid") };
        assert!(poly.is_closed_sphere());
        assert_eq!(sorted(h.vertices()), sorted(cube()));

        let mut pts = cube();
        pts.push([0.5, 0.5, 0.5]);
        pts.push([0.2, 0.7, 0.1]);
        let b = batch_hull3(&pts);
        assert_eq!(sorted(b.vertices()), sorted(cube()));
        let Hull3::Solid(ref poly) = b else { panic!("expected solid") };
        assert!(poly.is_closed_sphere());
    }

    #[test]
    fn faces_point_outward() {
        let mut h = Hull3::Empty;
        for p in [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]] {
            h.insert(p);
        }
        let Hull3::Solid(poly) = h else { panic!() };
        let centroid = [0.4, 0.4, 0.4];
        for [a, b, c] in poly.faces() {
            assert!(orient3d(a, b, c, centroid) > 0.0);
        }
    }

    #[test]
    fn degenerate_phases() {
        let mut h = Hull3::Empty;
        assert!(h.insert([0.0, 0.0, 0.0]));
        assert!(h.insert([1.0, 1.0, 1.0]));
        assert!(!h.insert([0.5, 0.5, 0.5]));
        assert!(h.insert([2.0, 2.0, 2.0]));
        assert_eq!(h.affine_dim(), 1);
        assert!(h.insert([1.0, 0.0, 0.0]));
        assert_eq!(h.affine_dim(), 2);
        assert!(!h.insert([1.0, 0.5, 0.5]));
        assert!(h.insert([3.0, 2.0, 2.0]));
        assert_eq!(h.vertices().len(), 4);
        assert!(h.insert([0.0, 0.0, 5.0]));
        assert_eq!(h.affine_dim(), 3);
        assert!(h.contains([1.0, 0.5, 0.5]));
    }

    #[test]
    fn planar_batch_falls_back() {
        let pts = [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [0.2, 0.2, 1.0]];
        let h = batch_hull3(&pts);
        assert_eq!(h.affine_dim(), 2);
        assert_eq!(h.vertices().len(), 3);
    }
}
