//! Convex-hull machinery: exact hulls in two and three dimensions, interior
//! certificates in any dimension, hull functionals, and the Hausdorff metric.

pub mod directions;
pub mod functionals;
pub mod hausdorff;
pub mod hull;
pub mod hull2;
pub mod hull3;
pub mod interior;
pub mod lp;
pub mod predicates;
pub mod quadrant;

pub use directions::DirectionSet;
pub use functionals::{diameter, hull_functionals, HullFunctionals};
pub use hausdorff::{hausdorff_distance, hausdorff_distance_with, support_function};
pub use hull::{batch_hull, incremental_insert, ConvexHull, Facet};
pub use interior::{
    inradius_at, is_interior, is_origin_interior, origin_inradius, origin_inradius_points, separating_direction,
    INTERIOR_MARGIN,
};
pub use quadrant::{quadrant_of, QuadrantIndex, MAX_QUADRANT_DIM};
