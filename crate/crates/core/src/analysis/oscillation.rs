use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Domain, Point};
use crate::transport::CloudPair;

/// Uniform bucket grid over a point set for fixed-radius neighbour queries.
pub(crate) struct Grid {
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    /// Start offsets into `items`, one per cell plus a sentinel.
    starts: Vec<usize>,
    items: Vec<usize>,
}

impl Grid {
    pub(crate) fn new(points: &[Point], cell: f64) -> Self {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if points.is_empty() {
            lo = Point::ORIGIN;
            hi = Point::ORIGIN;
        }
        let nx = (((hi.x - lo.x) / cell).floor() as usize + 1).max(1);
        let ny = (((hi.y - lo.y) / cell).floor() as usize + 1).max(1);
        let mut grid = Grid {
            origin: lo,
            cell,
            nx,
            ny,
            starts: vec![0; nx * ny + 1],
            items: vec![0; points.len()],
        };
        let keys: Vec<usize> = points.iter().map(|p| grid.key(*p)).collect();
        for &k in &keys {
            grid.starts[k + 1] += 1;
        }
        for c in 0..nx * ny {
            grid.starts[c + 1] += grid.starts[c];
        }
        let mut fill = grid.starts.clone();
        for (i, &k) in keys.iter().enumerate() {
            grid.items[fill[k]] = i;
            fill[k] += 1;
        }
        grid
    }

    fn coords(&self, p: Point) -> (usize, usize) {
        let cx = (((p.x - self.origin.x) / self.cell).floor().max(0.0) as usize).min(self.nx - 1);
        let cy = (((p.y - self.origin.y) / self.cell).floor().max(0.0) as usize).min(self.ny - 1);
        (cx, cy)
    }

    fn key(&self, p: Point) -> usize {
        let (cx, cy) = self.coords(p);
        cy * self.nx + cx
    }

    /// Calls `visit` for every stored index whose point lies within `r` of `p`.
    pub(crate) fn for_each_within(&self, points: &[Point], p: Point, r: f64, mut visit: impl FnMut(usize)) {
        let reach = (r / self.cell).ceil() as isize;
        let (cx, cy) = self.coords(p);
        let r2 = r * r;
        for gy in (cy as isize - reach).max(0)..=(cy as isize + reach).min(self.ny as isize - 1) {
            for gx in (cx as isize - reach).max(0)..=(cx as isize + reach).min(self.nx as isize - 1) {
                let c = gy as usize * self.nx + gx as usize;
                for &i in &self.items[self.starts[c]..self.starts[c + 1]] {
                    if points[i].dist_sq(p) <= r2 {
                        visit(i);
                    }
                }
            }
        }
    }
}

/// Local oscillation of the discrete map at one source point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probe {
    pub location: Point,
    /// `max |y_sigma(i) - y_sigma(j)|` over sources `x_j` within `h` of `x_i`.
    pub oscillation: f64,
    /// The two targets realising the maximum.
    pub jump_pair: (Point, Point),
}

/// Oscillation estimates for every source point, optionally thresholded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub probes: Vec<Probe>,
    /// Threshold used for flagging; `None` before [`detect_jump_set`].
    pub threshold: Option<f64>,
    pub h: f64,
    /// Indices into `probes` with oscillation above the threshold.
    pub flagged: Vec<usize>,
}

impl JumpReport {
    pub fn flagged_probes(&self) -> impl Iterator<Item = &Probe> {
        self.flagged.iter().map(|&k| &self.probes[k])
    }

    pub fn max_oscillation(&self) -> f64 {
        self.probes.iter().map(|p| p.oscillation).fold(0.0, f64::max)
    }

    pub fn is_flagged(&self, k: usize) -> bool {
        self.flagged.binary_search(&k).is_ok()
    }
}

/// Default probe radius `2 sqrt(area / n)`.
pub fn default_h(area: f64, n: usize) -> f64 {
    2.0 * (area / n as f64).sqrt()
}

/// Default flagging threshold, six probe radii.
pub fn default_threshold(h: f64) -> f64 {
    6.0 * h
}

/// Oscillation of `x_i -> y_sigma(i)` over balls of radius `h` around each
/// source point.
pub fn local_oscillation(pair: &CloudPair, sigma: &[usize], h: f64) -> Result<JumpReport> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!("probe radius must be positive, got {h}")));
    }
    if sigma.len() != pair.len() {
        return Err(Error::SizeMismatch {
            source_len: pair.len(),
            target_len: sigma.len(),
        });
    }
    let x = &pair.source;
    let y: Vec<Point> = sigma.iter().map(|&s| pair.target[s]).collect();
    let grid = Grid::new(x, h);
    let probes = (0..x.len())
        .into_par_iter()
        .map(|i| {
            let mut best = 0.0;
            let mut other = i;
            grid.for_each_within(x, x[i], h, |j| {
                let d = y[i].dist(y[j]);
                if d > best || (d == best && j < other) {
                    best = d;
                    other = j;
                }
            });
            Probe {
                location: x[i],
                oscillation: best,
                jump_pair: (y[i], y[other]),
            }
        })
        .collect();
    Ok(JumpReport {
        probes,
        threshold: None,
        h,
        flagged: Vec::new(),
    })
}

/// Flags the probes whose oscillation exceeds `threshold`, which must be
/// larger than `2 h`.
pub fn detect_jump_set(report: &JumpReport, threshold: f64) -> Result<JumpReport> {
    if !(threshold > 2.0 * report.h) {
        return Err(Error::InvalidParameter(format!(
            "threshold {threshold} must exceed twice the probe radius ({})",
            2.0 * report.h
        )));
    }
    let flagged = (0..report.probes.len())
        .filter(|&k| report.probes[k].oscillation > threshold)
        .collect();
    Ok(JumpReport {
        probes: report.probes.clone(),
        threshold: Some(threshold),
        h: report.h,
        flagged,
    })
}

/// Whether the segment from `a` to `b`, with `trim` removed at each end,
/// has a point outside `domain`. Samples are spaced at most `step` apart.
pub fn chord_leaves_domain(domain: &Domain, a: Point, b: Point, trim: f64, step: f64) -> bool {
    let len = a.dist(b);
    if len <= 2.0 * trim {
        return false;
    }
    let samples = ((len - 2.0 * trim) / step).ceil().max(1.0) as usize;
    (0..=samples).any(|k| {
        let s = trim + (len - 2.0 * trim) * k as f64 / samples as f64;
        !domain.contains(a.lerp(b, s / len))
    })
}

/// Single-linkage cluster of flagged probes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpCluster {
    /// Probe indices, ascending.
    pub members: Vec<usize>,
    /// Bin averages along the principal axis, one vertex per `h` of extent.
    pub polyline: Vec<Point>,
}

/// Groups flagged probes by single linkage at distance `link` and reduces
/// each group to a polyline. Clusters are ordered by size, largest first,
/// then by smallest member index.
pub fn cluster_jumps(report: &JumpReport, link: f64) -> Vec<JumpCluster> {
    let pts: Vec<Point> = report.flagged_probes().map(|p| p.location).collect();
    let m = pts.len();
    if m == 0 {
        return Vec::new();
    }
    let grid = Grid::new(&pts, link);
    let mut label = vec![usize::MAX; m];
    let mut clusters = Vec::new();
    for seed in 0..m {
        if label[seed] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        label[seed] = id;
        let mut stack = vec![seed];
        let mut members = Vec::new();
        while let Some(a) = stack.pop() {
            members.push(report.flagged[a]);
            grid.for_each_within(&pts, pts[a], link, |b| {
                if label[b] == usize::MAX {
                    label[b] = id;
                    stack.push(b);
                }
            });
        }
        members.sort_unstable();
        let locs: Vec<Point> = members.iter().map(|&k| report.probes[k].location).collect();
        clusters.push(JumpCluster {
            polyline: principal_polyline(&locs, report.h),
            members,
        });
    }
    clusters.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then(a.members[0].cmp(&b.members[0])));
    clusters
}

fn principal_polyline(pts: &[Point], bin: f64) -> Vec<Point> {
    let n = pts.len() as f64;
    let mean = pts.iter().fold(Point::ORIGIN, |a, p| a + *p) * (1.0 / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in pts {
        let d = *p - mean;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    let axis = Point::from_angle(0.5 * (2.0 * sxy).atan2(sxx - syy));
    let proj: Vec<f64> = pts.iter().map(|p| (*p - mean).dot(axis)).collect();
    let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
    let bins = ((proj.iter().copied().fold(f64::NEG_INFINITY, f64::max) - lo) / bin).floor() as usize + 1;
    let mut sum = vec![Point::ORIGIN; bins];
    let mut count = vec![0usize; bins];
    for (p, t) in pts.iter().zip(&proj) {
        let b = (((t - lo) / bin).floor() as usize).min(bins - 1);
        sum[b] += *p;
        count[b] += 1;
    }
    sum.iter()
        .zip(&count)
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| *s * (1.0 / c as f64))
        .collect()
}
