use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::curve::BoundaryCurve;
use super::discrete::{discretize, DiscreteBoundary};
use super::point::Point;
use crate::error::{Error, Result};

/// Boundary resolution used when none is requested.
pub const DEFAULT_RESOLUTION: usize = 2048;

/// A bounded planar domain carrying the uniform probability measure.
#[derive(Debug, Clone)]
pub struct Domain {
    boundary: BoundaryCurve,
    discrete: DiscreteBoundary,
    area: f64,
}

impl Domain {
    pub fn new(boundary: BoundaryCurve) -> Result<Self> {
        Self::with_resolution(boundary, DEFAULT_RESOLUTION)
    }

    pub fn with_resolution(boundary: BoundaryCurve, n: usize) -> Result<Self> {
        let discrete = discretize(&boundary, n)?;
        let area = boundary.signed_area();
        Ok(Domain {
            boundary,
            discrete,
            area,
        })
    }

    /// Loads a JSON domain file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Domain::new(BoundaryCurve::load(path)?)
    }

    pub fn boundary(&self) -> &BoundaryCurve {
        &self.boundary
    }

    pub fn discrete(&self) -> &DiscreteBoundary {
        &self.discrete
    }

    /// Exact enclosed area.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Density of the uniform probability measure.
    pub fn density(&self) -> f64 {
        1.0 / self.area
    }

    /// Exact membership test against the analytic boundary.
    pub fn contains(&self, p: Point) -> bool {
        self.boundary.contains(p)
    }

    /// Distance to the sampled boundary polygon.
    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        self.discrete.distance_to(p)
    }

    pub fn diameter(&self) -> f64 {
        self.boundary.diameter()
    }

    /// Same domain moved by a rotation about the origin and a translation.
    pub fn transformed(&self, rotation: f64, translation: Point) -> Result<Domain> {
        Domain::with_resolution(self.boundary.transformed(rotation, translation), self.discrete.len())
    }
}

const STALL_MIN_ATTEMPTS: u64 = 100_000;
const STALL_RATE: f64 = 1e-4;

/// `n` independent uniform points in the domain by rejection from the
/// bounding box. The ChaCha stream keyed by `seed` makes the output
/// reproducible across runs and platforms.
pub fn sample_uniform(domain: &Domain, n: usize, seed: u64) -> Result<Vec<Point>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be at least 1".into()));
    }
    let (lo, hi) = domain.boundary().bounding_box();
    let span = hi - lo;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut attempts: u64 = 0;
    while out.len() < n {
        attempts += 1;
        let p = Point::new(lo.x + span.x * rng.gen::<f64>(), lo.y + span.y * rng.gen::<f64>());
        if domain.contains(p) {
            out.push(p);
        }
        if attempts >= STALL_MIN_ATTEMPTS {
            let rate = out.len() as f64 / attempts as f64;
            if rate < STALL_RATE {
                return Err(Error::SamplingStalled { rate, attempts });
            }
        }
    }
    Ok(out)
}
