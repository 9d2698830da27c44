//! Diagnostics of discrete optimal maps: jump detection, angle functions,
//! restriction optimality and boundary tracing.

mod angle;
mod export;
mod oscillation;
mod restriction;
mod study;
mod trace;

pub use angle::{angle_function, AngleTrace};
pub use export::{jumps_svg, write_jumps_csv};
pub use oscillation::{
    chord_leaves_domain, cluster_jumps, default_h, default_threshold, detect_jump_set, local_oscillation, JumpCluster,
    JumpReport, Probe,
};
pub use restriction::{restriction_optimality_check, restriction_report, RestrictionReport};
pub use trace::{boundary_image_trace, distance_to_segments, forward_image, inverse_image, locate_preimage_on, SegmentImage};
pub use study::{
    study_half_annulus, study_squareman, Check, HalfAnnulusStudy, SquaremanConfig, SquaremanStudy, CYCLE_LEN,
    CYCLE_TRIALS,
};
