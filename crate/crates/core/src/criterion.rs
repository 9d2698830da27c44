//! Curvature criteria on discretized boundaries.
//!
//! Both criteria reduce to the minimum total turning over connected boundary
//! arcs. A source with convex boundary and a target whose boundary contains an
//! arc turning by less than `-pi` forces a discontinuous optimal map; a target
//! arc whose turning undercuts the best source arc by more than `pi` rules out
//! any smooth optimal diffeomorphism.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry::{ArcWindow, DiscreteBoundary, Domain};

/// Margin by which an inequality must hold before a verdict is issued.
pub const TOL_MARGIN: f64 = 0.02;

/// Windows above this value are not reported in place of the empty window.
const EMPTY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    DiscontinuityGuaranteed,
    NoDiffeomorphismGuaranteed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    /// Most negative arc turning of the target boundary.
    pub min_arc_value: f64,
    pub witness_window: ArcWindow,
    /// Value `min_arc_value` must undercut (by `TOL_MARGIN`) for a positive verdict.
    pub threshold: f64,
    pub verdict: Verdict,
    pub convexity_of_source: bool,
    /// `threshold - min_arc_value`; positive when the inequality holds.
    pub margin: f64,
}

/// Minimum arc turning over all windows, including the empty one, with a
/// witness window attaining it.
///
/// With `M_k = P_k + t_k / 2`, where `P_k` is the turning strictly before
/// vertex `k` and `M_{k+n} = M_k + 2 pi`, the window from `s` to `e > s`
/// turns by `M_e - M_s`. A sliding maximum over `M_s` for
/// `e - n < s < e` gives the minimum in linear time. Ties go to the window
/// found first in scan order of the end vertex.
pub fn min_arc_turning(db: &DiscreteBoundary) -> (f64, ArcWindow) {
    let n = db.len();
    let t = db.turning();
    let mut m = Vec::with_capacity(2 * n);
    let mut prefix = 0.0;
    for &ti in t {
        m.push(prefix + 0.5 * ti);
        prefix += ti;
    }
    for k in 0..n {
        m.push(m[k] + TAU);
    }

    let mut best = 0.0;
    let mut witness = ArcWindow::Empty;
    for (s, &ts) in t.iter().enumerate() {
        if ts < best && ts < -EMPTY_SLACK {
            best = ts;
            witness = ArcWindow::span(s, s);
        }
    }

    // deque of candidate starts with decreasing M
    let mut dq: VecDeque<usize> = VecDeque::new();
    for e in 1..(2 * n - 1) {
        let s_new = e - 1;
        if s_new < n {
            while dq.back().is_some_and(|&b| m[b] <= m[s_new]) {
                dq.pop_back();
            }
            dq.push_back(s_new);
        }
        while dq.front().is_some_and(|&f| f + n <= e) {
            dq.pop_front();
        }
        if let Some(&s) = dq.front() {
            let value = m[e] - m[s];
            if value < best && value < -EMPTY_SLACK {
                best = value;
                witness = ArcWindow::span(s, e % n);
            }
        }
    }
    (best, witness)
}

/// Discontinuity criterion for the optimal map from `omega` to `lambda`.
pub fn check_discontinuity(omega: &Domain, lambda: &Domain) -> CriterionReport {
    let convex = omega.discrete().is_convex();
    let (min_arc_value, witness_window) = min_arc_turning(lambda.discrete());
    let threshold = -PI;
    let verdict = if convex && min_arc_value < threshold - TOL_MARGIN {
        Verdict::DiscontinuityGuaranteed
    } else {
        Verdict::Inconclusive
    };
    CriterionReport {
        min_arc_value,
        witness_window,
        threshold,
        verdict,
        convexity_of_source: convex,
        margin: threshold - min_arc_value,
    }
}

/// Obstruction to a smooth optimal diffeomorphism from `omega` onto `lambda`.
pub fn check_wolfson_urbas(omega: &Domain, lambda: &Domain) -> CriterionReport {
    let convex = omega.discrete().is_convex();
    let (omega_min, _) = min_arc_turning(omega.discrete());
    let (min_arc_value, witness_window) = min_arc_turning(lambda.discrete());
    let threshold = omega_min - PI;
    let verdict = if min_arc_value <= threshold - TOL_MARGIN {
        Verdict::NoDiffeomorphismGuaranteed
    } else {
        Verdict::Inconclusive
    };
    CriterionReport {
        min_arc_value,
        witness_window,
        threshold,
        verdict,
        convexity_of_source: convex,
        margin: threshold - min_arc_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use proptest::prelude::*;

    /// Quadratic scan over every nonempty window, grown one vertex at a time.
    fn brute_force(db: &DiscreteBoundary) -> f64 {
        let n = db.len();
        let t = db.turning();
        let mut best = 0.0f64;
        for s in 0..n {
            best = best.min(t[s]);
            let mut interior = 0.0;
            for len in 2..=n {
                let e = (s + len - 1) % n;
                let value = interior + 0.5 * (t[s] + t[e]);
                best = best.min(value);
                interior += t[e];
            }
        }
        best
    }

    fn star(k: usize, inner: f64) -> DiscreteBoundary {
        let pts: Vec<Point> = (0..2 * k)
            .map(|i| {
                let r = if i % 2 == 0 { 1.0 } else { inner };
                Point::from_angle(PI * i as f64 / k as f64) * r
            })
            .collect();
        DiscreteBoundary::from_vertices(pts).unwrap()
    }

    #[test]
    fn convex_polygon_gives_empty_window() {
        let pts: Vec<Point> = (0..12).map(|i| Point::from_angle(TAU * i as f64 / 12.0)).collect();
        let db = DiscreteBoundary::from_vertices(pts).unwrap();
        assert_eq!(min_arc_turning(&db), (0.0, ArcWindow::Empty));
    }

    #[test]
    fn witness_realizes_value() {
        for (k, inner) in [(3, 0.3), (5, 0.5), (7, 0.2), (4, 0.9)] {
            let db = star(k, inner);
            let (value, w) = min_arc_turning(&db);
            assert!((value - brute_force(&db)).abs() < 1e-12);
            assert!((db.arc_turning(w) - value).abs() < 1e-12);
        }
    }

    #[test]
    fn l_shape_single_reflex_corner() {
        let db = DiscreteBoundary::from_vertices(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ])
        .unwrap();
        let (value, w) = min_arc_turning(&db);
        assert!((value + PI / 2.0).abs() < 1e-12);
        assert_eq!(w, ArcWindow::span(3, 3));
    }

    proptest! {
        #[test]
        fn matches_brute_force_on_random_star_polygons(radii in prop::collection::vec(0.2f64..1.0, 8..40)) {
            let k = radii.len();
            let pts: Vec<Point> = radii
                .iter()
                .enumerate()
                .map(|(i, r)| Point::from_angle(TAU * i as f64 / k as f64) * *r)
                .collect();
            let db = DiscreteBoundary::from_vertices(pts).unwrap();
            let (value, w) = min_arc_turning(&db);
            prop_assert!((value - brute_force(&db)).abs() < 1e-12);
            prop_assert!((db.arc_turning(w) - value).abs() < 1e-12);
            prop_assert!(value <= 0.0);
            let negative: f64 = db.turning().iter().filter(|t| **t < 0.0).sum();
            prop_assert!(value >= negative - 1e-12);
        }
    }
}
