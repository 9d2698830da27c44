//! Discrete quadratic-cost optimal transport between equal-size clouds with
//! uniform weights.

mod entropic;
mod exact;
mod export;
mod monotonicity;

pub use entropic::{solve_entropic, EntropicPlan};
pub use exact::{solve_exact, verify_certificate, Certificate, Pairing};
pub use export::{read_pairing_csv, write_pairing_csv, PairingRow};
pub use monotonicity::{cyclical_monotonicity_check, monotonicity_violations, tol_mono};

use crate::error::{Error, Result};
use crate::geometry::{sample_uniform, Domain, Point};

/// Source samples `X` and target samples `Y` of equal size.
#[derive(Debug, Clone, PartialEq)]
pub struct CloudPair {
    pub source: Vec<Point>,
    pub target: Vec<Point>,
}

impl CloudPair {
    pub fn new(source: Vec<Point>, target: Vec<Point>) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::SizeMismatch {
                source_len: source.len(),
                target_len: target.len(),
            });
        }
        if source.is_empty() {
            return Err(Error::InvalidParameter("clouds must contain at least one point".into()));
        }
        if let Some(p) = source.iter().chain(&target).find(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite coordinate ({}, {})", p.x, p.y)));
        }
        Ok(CloudPair { source, target })
    }

    /// `n` uniform samples of each domain. The source stream is seeded with
    /// `2 seed` and the target stream with `2 seed + 1`.
    pub fn sample(omega: &Domain, lambda: &Domain, n: usize, seed: u64) -> Result<Self> {
        let source = sample_uniform(omega, n, seed.wrapping_mul(2))?;
        let target = sample_uniform(lambda, n, seed.wrapping_mul(2).wrapping_add(1))?;
        CloudPair::new(source, target)
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// Diagonal of the bounding box of both clouds, at least 1e-300.
    pub fn scale(&self) -> f64 {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.source.iter().chain(&self.target) {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (hi - lo).norm().max(1e-300)
    }

    /// Pair with source and target exchanged.
    pub fn reversed(&self) -> CloudPair {
        CloudPair {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}
