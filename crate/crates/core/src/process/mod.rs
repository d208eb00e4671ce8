//! Running hull of a path: growth events, functionals, orthant cover and
//! interior times.

mod cover;
mod trajectory;

pub use cover::{
    cover_points, endpoint_interior, endpoint_interior_routes, origin_interior_index, quadrant_cover, CoverRecord,
    EndpointRoutes, DEFAULT_MAX_COVER_DIM,
};
pub use trajectory::{evolve_hull, evolve_points, growth_fraction, growth_times, GrowthEvent, HullTrajectory};
