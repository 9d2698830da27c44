//! Sampled boundaries with per-vertex turning angles.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::curve::{BoundaryCurve, Primitive};
use super::point::{point_segment_dist, segments_intersect, signed_angle, Point};
use crate::error::{Error, Result};

/// Absolute slack on turning angles when deciding convexity.
pub const TOL_CONVEX: f64 = 1e-9;

/// Smallest accepted discretization.
pub const MIN_VERTICES: usize = 8;

/// A contiguous, cyclic range of boundary vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArcWindow {
    Empty,
    /// Vertices `start_vertex, start_vertex + 1, ..., end_vertex` (mod n).
    Span { start_vertex: usize, end_vertex: usize },
}

impl ArcWindow {
    pub fn span(start_vertex: usize, end_vertex: usize) -> Self {
        ArcWindow::Span {
            start_vertex,
            end_vertex,
        }
    }

    /// Number of vertices covered on a boundary with `n` vertices.
    pub fn vertex_count(&self, n: usize) -> usize {
        match *self {
            ArcWindow::Empty => 0,
            ArcWindow::Span {
                start_vertex,
                end_vertex,
            } => (end_vertex + n - start_vertex) % n + 1,
        }
    }

    /// Cyclic vertex indices covered by the window, in order.
    pub fn vertices(&self, n: usize) -> Vec<usize> {
        match *self {
            ArcWindow::Empty => Vec::new(),
            ArcWindow::Span { start_vertex, .. } => (0..self.vertex_count(n)).map(|k| (start_vertex + k) % n).collect(),
        }
    }
}

/// A simple counterclockwise polygon with turning angles.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBoundary {
    vertices: Vec<Point>,
    edge_lengths: Vec<f64>,
    turning: Vec<f64>,
    cum_turning: Vec<f64>,
    corners: Vec<usize>,
}

impl DiscreteBoundary {
    /// Builds and validates a polygon from its vertices (implicitly closed).
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        Self::build(vertices, Vec::new())
    }

    fn build(vertices: Vec<Point>, corners: Vec<usize>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::ResolutionTooLow {
                requested: n,
                required: 3,
            });
        }
        let edges: Vec<Point> = (0..n).map(|i| vertices[(i + 1) % n] - vertices[i]).collect();
        if let Some(i) = edges.iter().position(|e| e.norm_sq() == 0.0) {
            return Err(Error::InvalidPiece {
                piece: i,
                reason: "consecutive duplicate vertices".into(),
            });
        }
        let edge_lengths = edges.iter().map(|e| e.norm()).collect();
        let turning: Vec<f64> = (0..n).map(|i| signed_angle(edges[(i + n - 1) % n], edges[i])).collect();
        if let Some(i) = turning.iter().position(|t| t.abs() >= PI) {
            return Err(Error::SelfIntersecting {
                first: (i + n - 1) % n,
                second: i,
            });
        }
        let cum_turning = turning
            .iter()
            .scan(0.0, |acc, t| {
                *acc += t;
                Some(*acc)
            })
            .collect();
        let db = DiscreteBoundary {
            vertices,
            edge_lengths,
            turning,
            cum_turning,
            corners,
        };
        if let Some((first, second)) = db.find_self_intersection() {
            return Err(Error::SelfIntersecting { first, second });
        }
        let signed_area = db.signed_area();
        if signed_area <= 0.0 {
            return Err(Error::ClockwiseBoundary { signed_area });
        }
        Ok(db)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    /// Exterior angle at each vertex, in `(-pi, pi)`.
    pub fn turning(&self) -> &[f64] {
        &self.turning
    }

    /// Running sums of the turning angles.
    pub fn cum_turning(&self) -> &[f64] {
        &self.cum_turning
    }

    /// Vertices that sit on a tangent discontinuity of the source curve.
    pub fn corners(&self) -> &[usize] {
        &self.corners
    }

    pub fn total_turning(&self) -> f64 {
        self.turning.iter().sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.edge_lengths.iter().sum()
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n).map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n])).sum::<f64>()
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// Even-odd ray-crossing containment.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[j];
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    pub fn is_convex(&self) -> bool {
        self.turning.iter().all(|&t| t >= -TOL_CONVEX)
    }

    /// Euclidean distance from `p` to the polygon boundary.
    pub fn distance_to(&self, p: Point) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| point_segment_dist(p, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        self.vertices.iter().fold(
            (
                Point::new(f64::INFINITY, f64::INFINITY),
                Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
            ),
            |(lo, hi), p| (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y))),
        )
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }

    /// Inward unit normal of edge `i` (from vertex `i` to `i + 1`).
    pub fn edge_normal(&self, i: usize) -> Point {
        let n = self.vertices.len();
        let d = (self.vertices[(i + 1) % n] - self.vertices[i]) * (1.0 / self.edge_lengths[i]);
        d.perp()
    }

    /// Total turning over a window. Interior vertices count fully, the two
    /// endpoint vertices count half each; a single-vertex window counts that
    /// vertex fully.
    pub fn arc_turning(&self, w: ArcWindow) -> f64 {
        let n = self.len();
        match w {
            ArcWindow::Empty => 0.0,
            ArcWindow::Span {
                start_vertex,
                end_vertex,
            } => {
                if start_vertex == end_vertex {
                    return self.turning[start_vertex];
                }
                let count = w.vertex_count(n);
                let interior: f64 = (1..count - 1).map(|k| self.turning[(start_vertex + k) % n]).sum();
                interior + 0.5 * (self.turning[start_vertex] + self.turning[end_vertex])
            }
        }
    }

    /// First pair of non-adjacent edges that touch, if any. Sorted sweep over
    /// edge x-extents; every overlapping candidate pair is tested exactly.
    pub fn find_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        let seg = |i: usize| (self.vertices[i], self.vertices[(i + 1) % n]);
        let mut order: Vec<usize> = (0..n).collect();
        let xmin = |i: usize| {
            let (a, b) = seg(i);
            a.x.min(b.x)
        };
        order.sort_by(|&a, &b| xmin(a).total_cmp(&xmin(b)).then(a.cmp(&b)));
        let mut found: Option<(usize, usize)> = None;
        for (k, &i) in order.iter().enumerate() {
            let (a, b) = seg(i);
            let xmax = a.x.max(b.x);
            let (ylo, yhi) = (a.y.min(b.y), a.y.max(b.y));
            for &j in &order[k + 1..] {
                let (c, d) = seg(j);
                if c.x.min(d.x) > xmax {
                    break;
                }
                if c.y.min(d.y) > yhi || c.y.max(d.y) < ylo {
                    continue;
                }
                let adjacent = (i + 1) % n == j || (j + 1) % n == i;
                if adjacent {
                    continue;
                }
                if segments_intersect(a, b, c, d) {
                    let pair = (i.min(j), i.max(j));
                    if found.is_none_or(|f| pair < f) {
                        found = Some(pair);
                    }
                }
            }
        }
        found
    }
}

/// Splits `n` edges across primitives in proportion to length, respecting
/// per-primitive minimums (largest-remainder rounding).
fn allocate_edges(lengths: &[f64], minimums: &[usize], n: usize) -> Vec<usize> {
    let total: f64 = lengths.iter().sum();
    let ideal: Vec<f64> = lengths.iter().map(|l| n as f64 * l / total).collect();
    let mut counts: Vec<usize> = ideal
        .iter()
        .zip(minimums)
        .map(|(x, &m)| (x.floor() as usize).max(m))
        .collect();
    let mut sum: usize = counts.iter().sum();
    while sum < n {
        let k = (0..counts.len())
            .max_by(|&a, &b| (ideal[a] - counts[a] as f64).total_cmp(&(ideal[b] - counts[b] as f64)).then(b.cmp(&a)))
            .unwrap();
        counts[k] += 1;
        sum += 1;
    }
    while sum > n {
        let k = (0..counts.len())
            .filter(|&k| counts[k] > minimums[k])
            .min_by(|&a, &b| (ideal[a] - counts[a] as f64).total_cmp(&(ideal[b] - counts[b] as f64)).then(a.cmp(&b)))
            .expect("caller guarantees n covers the minimums");
        counts[k] -= 1;
        sum -= 1;
    }
    counts
}

/// Samples the curve into an `n`-vertex polygon. Every primitive start (in
/// particular every corner) is a vertex; interior samples are uniform in
/// arclength along each primitive.
pub fn discretize(curve: &BoundaryCurve, n: usize) -> Result<DiscreteBoundary> {
    let prims = curve.primitives();
    let minimums: Vec<usize> = prims
        .iter()
        .map(|p| match *p {
            Primitive::Segment { .. } => 1,
            Primitive::Arc { sweep, .. } => ((sweep.abs() / FRAC_PI_2).ceil() as usize).max(1),
        })
        .collect();
    let required = minimums.iter().sum::<usize>().max(MIN_VERTICES);
    if n < required {
        return Err(Error::ResolutionTooLow { requested: n, required });
    }
    let lengths: Vec<f64> = prims.iter().map(Primitive::length).collect();
    let counts = allocate_edges(&lengths, &minimums, n);

    let m = prims.len();
    let mut vertices = Vec::with_capacity(n);
    let mut corners = Vec::new();
    for (k, (prim, &count)) in prims.iter().zip(&counts).enumerate() {
        let prev_tangent = prims[(k + m - 1) % m].tangent_at(1.0);
        if signed_angle(prev_tangent, prim.tangent_at(0.0)).abs() > 1e-9 {
            corners.push(vertices.len());
        }
        for j in 0..count {
            vertices.push(prim.point_at(j as f64 / count as f64));
        }
    }
    DiscreteBoundary::build(vertices, corners)
}

/// Index of an edge of the open polyline whose direction is parallel to the
/// chord from its first to its last vertex (discrete Rolle property).
///
/// Returns the first edge with vanishing cross product if one exists,
/// otherwise the better of the two edges around the first sign change.
pub fn find_parallel_tangent(arc: &[Point]) -> Result<usize> {
    if arc.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "parallel tangent needs at least 3 vertices, got {}",
            arc.len()
        )));
    }
    let chord = arc[arc.len() - 1] - arc[0];
    let chord_len = chord.norm();
    let scale = arc.windows(2).map(|w| w[0].dist(w[1])).fold(0.0, f64::max);
    if chord_len <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateChord);
    }
    // sine of the angle between edge k and the chord
    let sines: Vec<f64> = arc
        .windows(2)
        .map(|w| {
            let e = w[1] - w[0];
            e.cross(chord) / (e.norm() * chord_len)
        })
        .collect();
    if let Some(k) = sines.iter().position(|s| s.abs() <= 1e-12) {
        return Ok(k);
    }
    let k = sines
        .windows(2)
        .position(|w| w[0].signum() != w[1].signum())
        .expect("edge directions sum to the chord, so the cross products change sign");
    Ok(if sines[k].abs() <= sines[k + 1].abs() { k } else { k + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::curve::BoundaryPiece;
    use std::f64::consts::TAU;

    fn circle() -> BoundaryCurve {
        BoundaryCurve::new(vec![BoundaryPiece::arc((0.0, 0.0), 1.0, 0.0, TAU, true)]).unwrap()
    }

    fn square() -> BoundaryCurve {
        BoundaryCurve::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn circle_turning_is_uniform() {
        let db = discretize(&circle(), 1000).unwrap();
        assert_eq!(db.len(), 1000);
        for t in db.turning() {
            assert!((t - TAU / 1000.0).abs() < 1e-12);
        }
        assert!((db.total_turning() - TAU).abs() < 1e-6);
        assert!((db.cum_turning()[999] - TAU).abs() < 1e-6);
    }

    #[test]
    fn square_has_four_corners() {
        let db = discretize(&square(), 400).unwrap();
        let corners: Vec<usize> = (0..400).filter(|&i| (db.turning()[i] - FRAC_PI_2).abs() < 1e-12).collect();
        assert_eq!(corners, vec![0, 100, 200, 300]);
        assert_eq!(db.corners(), &[0, 100, 200, 300]);
        for (i, t) in db.turning().iter().enumerate() {
            if !corners.contains(&i) {
                assert!(t.abs() < 1e-12, "vertex {i} turns {t}");
            }
        }
        assert!((db.area() - 1.0).abs() < 1e-12);
        assert!(db.contains(Point::new(0.5, 0.5)));
        assert!(db.is_convex());
    }

    #[test]
    fn low_resolution_rejected() {
        assert!(matches!(discretize(&square(), 7), Err(Error::ResolutionTooLow { .. })));
        assert!(matches!(discretize(&circle(), 6), Err(Error::ResolutionTooLow { .. })));
    }

    #[test]
    fn window_conventions() {
        let db = discretize(&circle(), 1000).unwrap();
        assert_eq!(db.arc_turning(ArcWindow::Empty), 0.0);
        // vertices 0..=500: 499 full interior + 2 halves = 500 steps
        let half = db.arc_turning(ArcWindow::span(0, 500));
        assert!((half - PI).abs() < 0.01);
        // complementary windows share endpoints and sum to the total
        let rest = db.arc_turning(ArcWindow::span(500, 0));
        assert!((half + rest - db.total_turning()).abs() < 1e-12);
        assert_eq!(db.arc_turning(ArcWindow::span(7, 7)), db.turning()[7]);
        assert_eq!(ArcWindow::span(990, 5).vertex_count(1000), 16);
        assert_eq!(ArcWindow::span(998, 1).vertices(1000), vec![998, 999, 0, 1]);
    }

    #[test]
    fn self_intersection_detected() {
        // bow-tie
        let err = DiscreteBoundary::from_vertices(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 2.0),
            Point::new(1.0, -1.0),
            Point::new(0.0, 2.0),
        ]);
        assert!(matches!(err, Err(Error::SelfIntersecting { .. })), "{err:?}");
    }

    #[test]
    fn self_intersecting_curve_rejected_at_discretization() {
        let c = BoundaryCurve::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 3.0),
            Point::new(1.0, -1.0),
            Point::new(0.0, 3.0),
        ]);
        match c {
            Ok(c) => assert!(matches!(discretize(&c, 64), Err(Error::SelfIntersecting { .. }))),
            Err(e) => panic!("closure and orientation hold for this curve: {e}"),
        }
    }

    #[test]
    fn parallel_tangent_semicircle() {
        let pts: Vec<Point> = (0..=101).map(|k| Point::from_angle(PI * k as f64 / 101.0)).collect();
        let k = find_parallel_tangent(&pts).unwrap();
        assert_eq!(k, 50);
        let mid = pts[k].lerp(pts[k + 1], 0.5);
        assert!(mid.dist(Point::new(0.0, 1.0)) < 0.02);
    }

    #[test]
    fn parallel_tangent_straight_and_degenerate() {
        let line: Vec<Point> = (0..5).map(|k| Point::new(k as f64, 2.0 * k as f64)).collect();
        assert_eq!(find_parallel_tangent(&line).unwrap(), 0);
        let closed = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0)];
        assert!(matches!(find_parallel_tangent(&closed), Err(Error::DegenerateChord)));
        assert!(find_parallel_tangent(&line[..2]).is_err());
    }

    #[test]
    fn parallel_tangent_quarter_circle_brute_force() {
        let m = 80;
        let pts: Vec<Point> = (0..=m).map(|k| Point::from_angle(FRAC_PI_2 * k as f64 / m as f64)).collect();
        let k = find_parallel_tangent(&pts).unwrap();
        // brute-force scan for the edge most parallel to the chord
        let chord = pts[m] - pts[0];
        let best = (0..m)
            .min_by(|&a, &b| {
                let s = |i: usize| ((pts[i + 1] - pts[i]).cross(chord) / (pts[i + 1] - pts[i]).norm()).abs();
                s(a).total_cmp(&s(b))
            })
            .unwrap();
        let mid = |i: usize| pts[i].lerp(pts[i + 1], 0.5);
        let target = Point::new(0.5f64.sqrt(), 0.5f64.sqrt());
        assert!(mid(k).dist(target) <= mid(best).dist(target) + 1e-12);
        assert!(mid(k).dist(target) < 0.02);
    }

    #[test]
    fn allocation_respects_minimums() {
        let c = allocate_edges(&[1.0, 1.0, 1e-6], &[1, 1, 1], 10);
        assert_eq!(c.iter().sum::<usize>(), 10);
        assert_eq!(c[2], 1);
        assert_eq!(allocate_edges(&[1.0; 4], &[1; 4], 400), vec![100; 4]);
    }
}
