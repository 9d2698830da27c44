//! Inner offset curves `{x in domain : dist(x, boundary) = eps}`.
//!
//! Vertices are pushed along the inward bisector (miter length, so each
//! offset edge stays parallel to its boundary edge at distance `eps`); reflex
//! corners are wrapped by circular arcs. Vertices that end up closer than
//! `eps` to the boundary (the swallowtail loops at convex corners) are
//! dropped and the surviving runs are rejoined at the offset-line corner.

use super::discrete::DiscreteBoundary;
use super::domain::Domain;
use super::point::{line_intersection, Point};
use crate::error::{Error, Result};

/// Reflex turning beyond which a corner is wrapped by an arc instead of a miter.
const REFLEX_ARC_THRESHOLD: f64 = 2e-3;
/// Angular step of the arcs inserted at reflex corners.
const ARC_STEP: f64 = 1e-2;

/// Result of [`offset_curve`].
#[derive(Debug, Clone)]
pub struct OffsetCurve {
    pub eps: f64,
    pub curve: DiscreteBoundary,
    /// For each boundary vertex, the index of its normal image on the offset
    /// curve, or `None` when that image fell inside a removed loop.
    pub correspondence: Vec<Option<usize>>,
}

/// Largest admissible offset: the smaller of half the inward-normal ray
/// thickness and the smallest radius of a convex arc. Offsets at or above
/// this value are refused.
pub fn eps_max(domain: &Domain) -> f64 {
    let half_thickness = 0.5 * ray_thickness(domain.discrete());
    match domain.boundary().min_convex_arc_radius() {
        Some(r) => half_thickness.min(r),
        None => half_thickness,
    }
}

/// Minimum over vertices of the distance along the inward bisector to the
/// next boundary crossing.
fn ray_thickness(db: &DiscreteBoundary) -> f64 {
    let n = db.len();
    let v = db.vertices();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let dir = match (db.edge_normal((i + n - 1) % n) + db.edge_normal(i)).normalized() {
            Some(d) => d,
            None => continue,
        };
        let origin = v[i];
        for j in 0..n {
            if j == i || (j + 1) % n == i {
                continue;
            }
            let a = v[j];
            let e = v[(j + 1) % n] - a;
            let denom = dir.cross(e);
            if denom.abs() < 1e-300 {
                continue;
            }
            let w = a - origin;
            let t = w.cross(e) / denom;
            let s = w.cross(dir) / denom;
            if t > 0.0 && (0.0..=1.0).contains(&s) && t < best {
                best = t;
            }
        }
    }
    best
}

struct Candidate {
    point: Point,
    /// Boundary vertex this candidate was generated from.
    source: usize,
    /// Whether the candidate is a miter point (lies on both adjacent offset lines).
    miter: bool,
}

/// Inner offset of the domain boundary at distance `eps`.
pub fn offset_curve(domain: &Domain, eps: f64) -> Result<OffsetCurve> {
    let max = eps_max(domain);
    if !(eps > 0.0) || eps >= max {
        return Err(Error::OffsetTooLarge { eps, eps_max: max });
    }
    let db = domain.discrete();
    let n = db.len();
    let v = db.vertices();
    let tol = 1e-9 * db.diameter();

    let mut candidates: Vec<Candidate> = Vec::with_capacity(n + 64);
    let mut own: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let n0 = db.edge_normal((i + n - 1) % n);
        let n1 = db.edge_normal(i);
        let tau = db.turning()[i];
        if tau >= -REFLEX_ARC_THRESHOLD {
            let bis = (n0 + n1).normalized().unwrap_or(n1);
            own.push(candidates.len());
            candidates.push(Candidate {
                point: v[i] + bis * (eps / (0.5 * tau).cos()),
                source: i,
                miter: true,
            });
        } else {
            let steps = ((-tau) / ARC_STEP).ceil() as usize;
            let a0 = n0.angle();
            let first = candidates.len();
            for k in 0..=steps {
                let ang = a0 + tau * k as f64 / steps as f64;
                candidates.push(Candidate {
                    point: v[i] + Point::from_angle(ang) * eps,
                    source: i,
                    miter: false,
                });
            }
            own.push(first + steps / 2);
        }
    }

    let keep: Vec<bool> = candidates
        .iter()
        .map(|c| db.contains(c.point) && db.distance_to(c.point) >= eps - tol)
        .collect();
    if !keep.iter().any(|&k| k) {
        return Err(Error::OffsetTooLarge { eps, eps_max: max });
    }

    // walk the candidates cyclically starting from a kept one
    let m = candidates.len();
    let start = keep.iter().position(|&k| k).unwrap();
    let mut out: Vec<Point> = Vec::with_capacity(m);
    let mut out_index: Vec<Option<usize>> = vec![None; m];
    let mut last_kept = start;
    let mut k = 0;
    while k < m {
        let idx = (start + k) % m;
        if keep[idx] {
            if k > 0 && (last_kept + 1) % m != idx {
                if let Some(p) = rejoin(&candidates[last_kept], &candidates[idx], db, eps, tol) {
                    out.push(p);
                }
            }
            out_index[idx] = Some(out.len());
            out.push(candidates[idx].point);
            last_kept = idx;
        }
        k += 1;
    }
    if (last_kept + 1) % m != start {
        if let Some(p) = rejoin(&candidates[last_kept], &candidates[start], db, eps, tol) {
            out.push(p);
        }
    }

    // merge coincident consecutive points, remapping indices
    let merge_tol = 1e-12 * db.diameter();
    let mut merged: Vec<Point> = Vec::with_capacity(out.len());
    let mut remap = vec![0usize; out.len()];
    for (i, p) in out.iter().enumerate() {
        if merged.last().is_some_and(|q: &Point| q.dist(*p) <= merge_tol) {
            remap[i] = merged.len() - 1;
        } else {
            remap[i] = merged.len();
            merged.push(*p);
        }
    }
    if merged.len() > 1 && merged[0].dist(*merged.last().unwrap()) <= merge_tol {
        merged.pop();
        let last = merged.len();
        for r in remap.iter_mut() {
            if *r == last {
                *r = 0;
            }
        }
    }

    let curve = DiscreteBoundary::from_vertices(merged).map_err(|_| Error::OffsetTooLarge { eps, eps_max: max })?;
    let correspondence = own.iter().map(|&c| out_index[c].map(|o| remap[o])).collect();
    Ok(OffsetCurve {
        eps,
        curve,
        correspondence,
    })
}

/// Corner point joining two kept candidates across a removed loop: the
/// intersection of the offset lines of the outgoing edge of `a` and the
/// incoming edge of `b`.
fn rejoin(a: &Candidate, b: &Candidate, db: &DiscreteBoundary, eps: f64, tol: f64) -> Option<Point> {
    if !a.miter || !b.miter {
        return None;
    }
    let n = db.len();
    let v = db.vertices();
    let ea = a.source;
    let eb = (b.source + n - 1) % n;
    let pa = v[ea] + db.edge_normal(ea) * eps;
    let da = v[(ea + 1) % n] - v[ea];
    let pb = v[eb] + db.edge_normal(eb) * eps;
    let dbv = v[(eb + 1) % n] - v[eb];
    let p = line_intersection(pa, da, pb, dbv)?;
    (db.contains(p) && (db.distance_to(p) - eps).abs() <= 1e3 * tol).then_some(p)
}
