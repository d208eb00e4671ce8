/// A finite set of points in `dim`-dimensional space stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

/// Borrowed view of a [`PointCloud`] (or of a prefix of one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSet<'a> {
    dim: usize,
    coords: &'a [f64],
}

impl PointCloud {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { dim, coords: Vec::new() }
    }

    pub fn with_capacity(dim: usize, points: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { dim, coords: Vec::with_capacity(dim * points) }
    }

    /// Panics if `coords.len()` is not a multiple of `dim`.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Self {
        assert!(dim > 0 && coords.len().is_multiple_of(dim), "ragged coordinate buffer");
        Self { dim, coords }
    }

    pub fn from_rows<R: AsRef<[f64]>>(dim: usize, rows: &[R]) -> Self {
        let mut cloud = Self::with_capacity(dim, rows.len());
        for r in rows {
            cloud.push(r.as_ref());
        }
        cloud
    }

    pub fn push(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.dim, "point has wrong dimension");
        self.coords.extend_from_slice(p);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn point_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn view(&self) -> PointSet<'_> {
        PointSet { dim: self.dim, coords: &self.coords }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

impl<'a> PointSet<'a> {
    pub fn new(dim: usize, coords: &'a [f64]) -> Self {
        assert!(dim > 0 && coords.len().is_multiple_of(dim), "ragged coordinate buffer");
        Self { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &'a [f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'a, f64> {
        self.coords.chunks_exact(self.dim)
    }

    /// The first `k` points.
    pub fn prefix(&self, k: usize) -> PointSet<'a> {
        PointSet { dim: self.dim, coords: &self.coords[..k * self.dim] }
    }

    pub fn to_cloud(&self) -> PointCloud {
        PointCloud { dim: self.dim, coords: self.coords.to_vec() }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
