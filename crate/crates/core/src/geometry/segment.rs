use serde::Serialize;

use super::point::{point_segment_dist, Point};

/// Named straight segment of a domain boundary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledSegment {
    pub label: String,
    pub from: Point,
    pub to: Point,
}

impl LabeledSegment {
    pub fn new(label: impl Into<String>, from: Point, to: Point) -> Self {
        LabeledSegment {
            label: label.into(),
            from,
            to,
        }
    }

    pub fn distance(&self, p: Point) -> f64 {
        point_segment_dist(p, self.from, self.to)
    }

    /// Closest point of the segment to `p`.
    pub fn project(&self, p: Point) -> Point {
        let d = self.to - self.from;
        let t = ((p - self.from).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
        self.from.lerp(self.to, t)
    }
}
