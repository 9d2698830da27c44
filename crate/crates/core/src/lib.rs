//! A planar optimal-transport laboratory.
//!
//! * [`geometry`]: piecewise boundaries, turning angles, offsets, sampling.
//! * [`criterion`]: curvature criteria that certify discontinuity of the
//!   optimal map or rule out smooth optimal diffeomorphisms.
//! * [`transport`]: exact and entropic discrete transport with quadratic cost.
//! * [`analysis`]: jump detection, angle functions and boundary tracing on
//!   discrete optimal maps.
//! * [`examples`]: constructors for the standard test domains and the
//!   closed-form half-annulus map.
//! * [`cli`]: the `otlab` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::mut_range_bound)]

pub mod analysis;
pub mod cli;
pub mod criterion;
pub mod error;
pub mod examples;
pub mod geometry;
pub mod transport;

pub use error::{Error, Result};
