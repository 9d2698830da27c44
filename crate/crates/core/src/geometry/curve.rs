//! Piecewise boundary descriptions: segments, circular arcs and polylines.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};

/// Relative closure tolerance between consecutive pieces.
pub const CLOSURE_TOL: f64 = 1e-9;

/// One piece of a boundary curve, as stored in domain files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundaryPiece {
    Segment {
        from: Point,
        to: Point,
    },
    /// Circular arc traversed from `theta_start` to `theta_end`, increasing
    /// the angle when `ccw` is set and decreasing it otherwise.
    Arc {
        center: Point,
        radius: f64,
        theta_start: f64,
        theta_end: f64,
        ccw: bool,
    },
    Polyline {
        points: Vec<Point>,
    },
}

impl BoundaryPiece {
    pub fn segment(from: impl Into<Point>, to: impl Into<Point>) -> Self {
        BoundaryPiece::Segment {
            from: from.into(),
            to: to.into(),
        }
    }

    pub fn arc(center: impl Into<Point>, radius: f64, theta_start: f64, theta_end: f64, ccw: bool) -> Self {
        BoundaryPiece::Arc {
            center: center.into(),
            radius,
            theta_start,
            theta_end,
            ccw,
        }
    }

    fn validate(&self, index: usize) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidPiece {
            piece: index,
            reason: reason.to_string(),
        };
        match self {
            BoundaryPiece::Segment { from, to } => {
                if !from.is_finite() || !to.is_finite() {
                    return Err(invalid("non-finite coordinates"));
                }
                if from == to {
                    return Err(invalid("segment has coincident endpoints"));
                }
            }
            BoundaryPiece::Arc {
                center,
                radius,
                theta_start,
                theta_end,
                ..
            } => {
                if !center.is_finite() || !theta_start.is_finite() || !theta_end.is_finite() {
                    return Err(invalid("non-finite arc parameters"));
                }
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("arc radius must be strictly positive"));
                }
                if (theta_end - theta_start).abs() > TAU * (1.0 + 1e-12) {
                    return Err(invalid("arc sweeps more than a full turn"));
                }
                if theta_end == theta_start {
                    return Err(invalid("arc has zero sweep"));
                }
            }
            BoundaryPiece::Polyline { points } => {
                if points.len() < 2 {
                    return Err(invalid("polyline needs at least two points"));
                }
                if points.iter().any(|p| !p.is_finite()) {
                    return Err(invalid("non-finite coordinates"));
                }
                if points.windows(2).any(|w| w[0] == w[1]) {
                    return Err(invalid("polyline repeats a consecutive point"));
                }
            }
        }
        Ok(())
    }

    fn push_primitives(&self, out: &mut Vec<Primitive>) {
        match self {
            BoundaryPiece::Segment { from, to } => out.push(Primitive::Segment { from: *from, to: *to }),
            BoundaryPiece::Arc {
                center,
                radius,
                theta_start,
                theta_end,
                ccw,
            } => {
                let mut sweep = theta_end - theta_start;
                if *ccw && sweep < 0.0 {
                    sweep += TAU;
                } else if !*ccw && sweep > 0.0 {
                    sweep -= TAU;
                }
                out.push(Primitive::Arc {
                    center: *center,
                    radius: *radius,
                    start: *theta_start,
                    sweep,
                });
            }
            BoundaryPiece::Polyline { points } => {
                out.extend(points.windows(2).map(|w| Primitive::Segment { from: w[0], to: w[1] }));
            }
        }
    }

    fn transformed(&self, rotation: f64, translation: Point) -> BoundaryPiece {
        let map = |p: Point| p.rotate(rotation) + translation;
        match self {
            BoundaryPiece::Segment { from, to } => BoundaryPiece::Segment {
                from: map(*from),
                to: map(*to),
            },
            BoundaryPiece::Arc {
                center,
                radius,
                theta_start,
                theta_end,
                ccw,
            } => BoundaryPiece::Arc {
                center: map(*center),
                radius: *radius,
                theta_start: theta_start + rotation,
                theta_end: theta_end + rotation,
                ccw: *ccw,
            },
            BoundaryPiece::Polyline { points } => BoundaryPiece::Polyline {
                points: points.iter().map(|p| map(*p)).collect(),
            },
        }
    }
}

/// A smooth primitive: a straight segment or a circular arc with signed sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Primitive {
    Segment { from: Point, to: Point },
    Arc { center: Point, radius: f64, start: f64, sweep: f64 },
}

impl Primitive {
    pub(crate) fn length(&self) -> f64 {
        match *self {
            Primitive::Segment { from, to } => from.dist(to),
            Primitive::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Point at normalized parameter `t` in `[0, 1]`.
    pub(crate) fn point_at(&self, t: f64) -> Point {
        match *self {
            Primitive::Segment { from, to } => {
                if t == 1.0 {
                    to
                } else {
                    from.lerp(to, t)
                }
            }
            Primitive::Arc {
                center,
                radius,
                start,
                sweep,
            } => center + Point::from_angle(start + sweep * t) * radius,
        }
    }

    pub(crate) fn start(&self) -> Point {
        self.point_at(0.0)
    }

    pub(crate) fn end(&self) -> Point {
        self.point_at(1.0)
    }

    /// Unit tangent at parameter `t`.
    pub(crate) fn tangent_at(&self, t: f64) -> Point {
        match *self {
            Primitive::Segment { from, to } => (to - from).normalized().unwrap_or(Point::new(1.0, 0.0)),
            Primitive::Arc { start, sweep, .. } => {
                let dir = Point::from_angle(start + sweep * t).perp();
                if sweep > 0.0 {
                    dir
                } else {
                    -dir
                }
            }
        }
    }

    /// Contribution to the signed area, `1/2 * integral of (x dy - y dx)`.
    pub(crate) fn area_term(&self) -> f64 {
        match *self {
            Primitive::Segment { from, to } => 0.5 * from.cross(to),
            Primitive::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let end = start + sweep;
                0.5 * (radius * center.x * (end.sin() - start.sin()) - radius * center.y * (end.cos() - start.cos())
                    + radius * radius * sweep)
            }
        }
    }

    /// Splits arcs at their vertical extremes so every piece is monotone in y.
    fn y_monotone_parts(&self) -> Vec<Primitive> {
        match *self {
            Primitive::Segment { .. } => vec![*self],
            Primitive::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let (lo, hi) = if sweep > 0.0 { (start, start + sweep) } else { (start + sweep, start) };
                let mut cuts: Vec<f64> = Vec::new();
                let mut k = ((lo - FRAC_PI_2) / PI).floor() + 1.0;
                loop {
                    let c = FRAC_PI_2 + k * PI;
                    if c >= hi {
                        break;
                    }
                    if c > lo {
                        cuts.push(c);
                    }
                    k += 1.0;
                }
                if sweep < 0.0 {
                    cuts.reverse();
                }
                let mut parts = Vec::with_capacity(cuts.len() + 1);
                let mut a = start;
                for c in cuts.into_iter().chain(std::iter::once(start + sweep)) {
                    parts.push(Primitive::Arc {
                        center,
                        radius,
                        start: a,
                        sweep: c - a,
                    });
                    a = c;
                }
                parts
            }
        }
    }

    /// Whether the horizontal ray from `p` toward +x crosses this y-monotone piece.
    /// Half-open in y so shared endpoints are counted exactly once.
    fn ray_crosses(&self, p: Point) -> bool {
        let a = self.start();
        let b = self.end();
        if (a.y > p.y) == (b.y > p.y) {
            return false;
        }
        let x = match *self {
            Primitive::Segment { .. } => a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y),
            Primitive::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let dy = p.y - center.y;
                let half = (radius * radius - dy * dy).max(0.0).sqrt();
                if (start + 0.5 * sweep).cos() >= 0.0 {
                    center.x + half
                } else {
                    center.x - half
                }
            }
        };
        x > p.x
    }

    fn extend_bbox(&self, lo: &mut Point, hi: &mut Point) {
        let mut add = |q: Point| {
            lo.x = lo.x.min(q.x);
            lo.y = lo.y.min(q.y);
            hi.x = hi.x.max(q.x);
            hi.y = hi.y.max(q.y);
        };
        add(self.start());
        add(self.end());
        if let Primitive::Arc {
            center,
            radius,
            start,
            sweep,
        } = *self
        {
            let (a, b) = if sweep > 0.0 { (start, start + sweep) } else { (start + sweep, start) };
            let mut k = (a / FRAC_PI_2).ceil();
            while k * FRAC_PI_2 <= b {
                add(center + Point::from_angle(k * FRAC_PI_2) * radius);
                k += 1.0;
            }
        }
    }
}

/// A closed, counterclockwise, piecewise-smooth Jordan curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCurve {
    pieces: Vec<BoundaryPiece>,
    #[serde(skip)]
    primitives: Vec<Primitive>,
}

#[derive(Deserialize)]
struct CurveFile {
    pieces: Vec<BoundaryPiece>,
}

impl BoundaryCurve {
    /// Validates closure, piece invariants and counterclockwise orientation.
    /// Simplicity is checked when the curve is discretized.
    pub fn new(pieces: Vec<BoundaryPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidPiece {
                piece: 0,
                reason: "boundary has no pieces".into(),
            });
        }
        for (i, p) in pieces.iter().enumerate() {
            p.validate(i)?;
        }
        let mut primitives = Vec::new();
        for p in &pieces {
            p.push_primitives(&mut primitives);
        }
        let curve = BoundaryCurve { pieces, primitives };

        let tol = CLOSURE_TOL * curve.diameter().max(f64::MIN_POSITIVE);
        // (first, last) primitive index of every piece; polylines are connected internally
        let mut spans = Vec::with_capacity(curve.pieces.len());
        let mut first = 0;
        for p in &curve.pieces {
            let count = match p {
                BoundaryPiece::Polyline { points } => points.len() - 1,
                _ => 1,
            };
            spans.push((first, first + count - 1));
            first += count;
        }
        for piece in 0..spans.len() {
            let last = spans[piece].1;
            let next_first = spans[(piece + 1) % spans.len()].0;
            let gap = curve.primitives[last].end().dist(curve.primitives[next_first].start());
            if gap > tol {
                return Err(Error::NonClosedCurve { piece, gap });
            }
        }

        let signed_area = curve.signed_area();
        if signed_area <= 0.0 {
            return Err(Error::ClockwiseBoundary { signed_area });
        }
        Ok(curve)
    }

    /// Builds a closed polygonal boundary from its vertices (the last vertex connects to the first).
    pub fn polygon(vertices: &[Point]) -> Result<Self> {
        let mut pieces = Vec::with_capacity(vertices.len());
        for i in 0..vertices.len() {
            pieces.push(BoundaryPiece::segment(vertices[i], vertices[(i + 1) % vertices.len()]));
        }
        BoundaryCurve::new(pieces)
    }

    /// Parses the JSON domain-file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text)?;
        BoundaryCurve::new(file.pieces)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        BoundaryCurve::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("boundary curves always serialize")
    }

    pub fn pieces(&self) -> &[BoundaryPiece] {
        &self.pieces
    }

    pub(crate) fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn length(&self) -> f64 {
        self.primitives.iter().map(Primitive::length).sum()
    }

    /// Exact signed area enclosed by the curve (positive for counterclockwise).
    pub fn signed_area(&self) -> f64 {
        self.primitives.iter().map(Primitive::area_term).sum()
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.primitives {
            p.extend_bbox(&mut lo, &mut hi);
        }
        (lo, hi)
    }

    /// Diagonal of the bounding box.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }

    /// Exact even-odd containment against the analytic pieces.
    pub fn contains(&self, p: Point) -> bool {
        let mut inside = false;
        for prim in &self.primitives {
            for part in prim.y_monotone_parts() {
                if part.ray_crosses(p) {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Smallest radius among counterclockwise (convex) arcs, if any.
    pub fn min_convex_arc_radius(&self) -> Option<f64> {
        self.primitives
            .iter()
            .filter_map(|p| match *p {
                Primitive::Arc { radius, sweep, .. } if sweep > 0.0 => Some(radius),
                _ => None,
            })
            .reduce(f64::min)
    }

    /// Applies a rotation about the origin followed by a translation.
    pub fn transformed(&self, rotation: f64, translation: Point) -> BoundaryCurve {
        let pieces: Vec<_> = self.pieces.iter().map(|p| p.transformed(rotation, translation)).collect();
        let mut primitives = Vec::new();
        for p in &pieces {
            p.push_primitives(&mut primitives);
        }
        BoundaryCurve { pieces, primitives }
    }

    /// Number of primitive junctions where the tangent direction jumps.
    pub fn corner_count(&self) -> usize {
        let m = self.primitives.len();
        (0..m)
            .filter(|&i| {
                let prev = self.primitives[(i + m - 1) % m].tangent_at(1.0);
                let next = self.primitives[i].tangent_at(0.0);
                super::point::signed_angle(prev, next).abs() > 1e-9
            })
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> BoundaryCurve {
        BoundaryCurve::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_area_and_containment() {
        let sq = unit_square();
        assert_eq!(sq.signed_area(), 1.0);
        assert!(sq.contains(Point::new(0.5, 0.5)));
        assert!(!sq.contains(Point::new(1.5, 0.5)));
        assert_eq!(sq.corner_count(), 4);
    }

    #[test]
    fn clockwise_rejected_with_hint() {
        let err = BoundaryCurve::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::ClockwiseBoundary { .. }));
        assert!(err.to_string().contains("reverse the piece order"));
    }

    #[test]
    fn open_curve_rejected() {
        let err = BoundaryCurve::new(vec![
            BoundaryPiece::segment((0.0, 0.0), (1.0, 0.0)),
            BoundaryPiece::segment((1.0, 0.0), (1.0, 1.0)),
            BoundaryPiece::segment((1.0, 1.0), (0.0, 0.1)),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NonClosedCurve { piece: 2, .. }));
    }

    #[test]
    fn bad_pieces_rejected() {
        let arc = BoundaryPiece::arc((0.0, 0.0), -1.0, 0.0, TAU, true);
        assert!(matches!(BoundaryCurve::new(vec![arc]), Err(Error::InvalidPiece { .. })));
        let poly = BoundaryPiece::Polyline {
            points: vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
        };
        assert!(matches!(BoundaryCurve::new(vec![poly]), Err(Error::InvalidPiece { .. })));
    }

    #[test]
    fn circle_exact_quantities() {
        let c = BoundaryCurve::new(vec![BoundaryPiece::arc((1.0, 2.0), 2.0, 0.0, TAU, true)]).unwrap();
        assert!((c.signed_area() - 4.0 * PI).abs() < 1e-12);
        assert!((c.length() - 4.0 * PI).abs() < 1e-12);
        let (lo, hi) = c.bounding_box();
        assert!(lo.dist(Point::new(-1.0, 0.0)) < 1e-12 && hi.dist(Point::new(3.0, 4.0)) < 1e-12);
        assert!(c.contains(Point::new(1.0, 2.0)));
        assert!(c.contains(Point::new(2.99, 2.0)));
        assert!(!c.contains(Point::new(3.01, 2.0)));
        // the ray passes exactly through the arc's top
        assert!(!c.contains(Point::new(-2.0, 4.0)));
        assert_eq!(c.corner_count(), 0);
    }

    #[test]
    fn half_annulus_containment_is_exact() {
        let s2 = 2f64.sqrt();
        let c = BoundaryCurve::new(vec![
            BoundaryPiece::arc((0.0, 0.0), s2, -FRAC_PI_2, FRAC_PI_2, true),
            BoundaryPiece::segment((0.0, s2), (0.0, 1.0)),
            BoundaryPiece::arc((0.0, 0.0), 1.0, FRAC_PI_2, -FRAC_PI_2, false),
            BoundaryPiece::segment((0.0, -1.0), (0.0, -s2)),
        ])
        .unwrap();
        assert!((c.signed_area() - FRAC_PI_2).abs() < 1e-12);
        assert!(!c.contains(Point::new(0.9999, 0.0)));
        assert!(c.contains(Point::new(1.0001, 0.0)));
        assert!(c.contains(Point::new(0.05, 1.1)));
        assert!(!c.contains(Point::new(-0.05, 1.1)));
        assert_eq!(c.min_convex_arc_radius(), Some(s2));
    }

    #[test]
    fn json_roundtrip_and_format() {
        let text = r#"{"pieces": [
            {"type":"segment","from":[0,0],"to":[1,0]},
            {"type":"arc","center":[1,0.5],"radius":0.5,"theta_start":-1.5707963267948966,"theta_end":1.5707963267948966,"ccw":true},
            {"type":"polyline","points":[[1,1],[0.5,1.2],[0,1]]},
            {"type":"segment","from":[0,1],"to":[0,0]}
        ]}"#;
        let c = BoundaryCurve::from_json(text).unwrap();
        assert_eq!(c.pieces().len(), 4);
        let again = BoundaryCurve::from_json(&c.to_json()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn rigid_motion_preserves_area() {
        let sq = unit_square().transformed(0.7, Point::new(3.0, -2.0));
        assert!((sq.signed_area() - 1.0).abs() < 1e-12);
    }
}
