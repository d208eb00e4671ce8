use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{hull_functionals, ConvexHull, HullFunctionals};
use crate::paths::{PathOrigin, VectorPath};
use crate::points::PointSet;

/// The hull changed when sample `index` was inserted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthEvent {
    pub index: usize,
    pub vertex_count: usize,
    pub functionals: HullFunctionals,
}

/// Running hull V(t_k) of a sampled path, stored as its growth events.
///
/// `grew[k]` is true iff sample k was strictly outside the hull of samples
/// `0..k`. The first sample always grows the (empty) hull.
#[derive(Debug, Clone)]
pub struct HullTrajectory {
    pub origin: Option<PathOrigin>,
    pub events: Vec<GrowthEvent>,
    pub grew: Vec<bool>,
    pub hull: ConvexHull,
}

impl HullTrajectory {
    /// Number of steps n (one less than the number of samples).
    pub fn steps(&self) -> usize {
        self.grew.len().saturating_sub(1)
    }

    /// Functionals of V(t_k) for every k, as the step function the events
    /// define.
    pub fn functional_trace(&self) -> Vec<HullFunctionals> {
        let mut out = Vec::with_capacity(self.grew.len());
        let mut current = HullFunctionals::DEGENERATE;
        let mut events = self.events.iter().peekable();
        for k in 0..self.grew.len() {
            if let Some(e) = events.next_if(|e| e.index == k) {
                current = e.functionals;
            }
            out.push(current);
        }
        out
    }

    /// Functionals of V(t_k): those recorded at the last growth event ≤ k.
    pub fn functionals_at(&self, k: usize) -> HullFunctionals {
        let pos = self.events.partition_point(|e| e.index <= k);
        if pos == 0 {
            HullFunctionals::DEGENERATE
        } else {
            self.events[pos - 1].functionals
        }
    }
}

pub fn evolve_hull(path: &VectorPath) -> Result<HullTrajectory> {
    let mut traj = evolve_points(path.samples.view())?;
    traj.origin = path.origin;
    Ok(traj)
}

/// Folds hull insertion over `points` in order.
pub fn evolve_points(points: PointSet<'_>) -> Result<HullTrajectory> {
    let mut hull = ConvexHull::empty(points.dim())?;
    let mut grew = Vec::with_capacity(points.len());
    let mut events = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let g = hull.insert(p);
        grew.push(g);
        if g {
            events.push(GrowthEvent { index: k, vertex_count: hull.vertex_count(), functionals: hull_functionals(&hull) });
        }
    }
    Ok(HullTrajectory { origin: None, events, grew, hull })
}

/// Indices at which the hull grew.
pub fn growth_times(traj: &HullTrajectory) -> Vec<usize> {
    traj.grew.iter().enumerate().filter(|(_, g)| **g).map(|(k, _)| k).collect()
}

/// Fraction of steps 1..=n at which the hull grew.
pub fn growth_fraction(traj: &HullTrajectory) -> f64 {
    let n = traj.steps();
    if n == 0 {
        return 0.0;
    }
    traj.grew[1..].iter().filter(|g| **g).count() as f64 / n as f64
}
