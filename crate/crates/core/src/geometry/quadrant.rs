use std::fmt;

/// Binary word θ ∈ {0,1}^d naming the open orthant where coordinate i is
/// positive iff bit i is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadrantIndex {
    bits: u32,
    dim: u8,
}

pub const MAX_QUADRANT_DIM: usize = 31;

impl QuadrantIndex {
    pub fn new(bits: u32, dim: usize) -> Self {
        assert!(dim <= MAX_QUADRANT_DIM && bits >> dim == 0);
        Self { bits, dim: dim as u8 }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    /// Position in 0..2^d.
    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn digits(self) -> Vec<u8> {
        (0..self.dim).map(|i| ((self.bits >> i) & 1) as u8).collect()
    }

    pub fn all(dim: usize) -> impl Iterator<Item = QuadrantIndex> {
        (0..1u32 << dim).map(move |b| QuadrantIndex::new(b, dim))
    }

    /// A representative point: ±1 in each coordinate.
    pub fn representative(self) -> Vec<f64> {
        self.digits().into_iter().map(|b| if b == 1 { 1.0 } else { -1.0 }).collect()
    }
}

impl fmt::Display for QuadrantIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.digits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The open orthant containing `x`, or `None` when some coordinate is zero.
pub fn quadrant_of(x: &[f64]) -> Option<QuadrantIndex> {
    if x.len() > MAX_QUADRANT_DIM {
        return None;
    }
    let mut bits = 0u32;
    for (i, &v) in x.iter().enumerate() {
        if v > 0.0 {
            bits |= 1 << i;
        } else if !(v < 0.0) {
            return None;
        }
    }
    Some(QuadrantIndex::new(bits, x.len()))
}
