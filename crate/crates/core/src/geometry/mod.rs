//! Planar Jordan boundaries: representation, sampling, turning angles,
//! offsets, containment.

mod curve;
mod discrete;
mod domain;
mod offset;
mod point;
mod segment;

pub use curve::{BoundaryCurve, BoundaryPiece, CLOSURE_TOL};
pub use discrete::{discretize, find_parallel_tangent, ArcWindow, DiscreteBoundary, MIN_VERTICES, TOL_CONVEX};
pub use domain::{sample_uniform, Domain, DEFAULT_RESOLUTION};
pub use offset::{eps_max, offset_curve, OffsetCurve};
pub use point::{line_intersection, point_segment_dist, segments_intersect, signed_angle, Point};
pub use segment::LabeledSegment;
