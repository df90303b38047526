//! Exact measure of the cells produced by [`crate::region`].

mod interval;
mod polygon;
mod polytope;

pub use interval::{interval_of, union_length, Interval};
pub use polygon::{clip_half_plane, clip_to_constraints, parabolic_area, shoelace_area, Point2};
pub use polytope::{polytope_vertices, polytope_volume, HalfSpace};
