use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{signed_angle, Point};

/// Tail-to-tail angle between the tangents of a source curve and its image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleTrace {
    /// Arclength of the source curve at the start of each tangent edge.
    pub params: Vec<f64>,
    /// Angle from the image tangent to the source tangent, in `(-pi, pi]`.
    pub f_values: Vec<f64>,
    /// Integer `k(t)` such that `f + 2 pi k` varies continuously.
    pub winding_correction: Vec<i64>,
}

impl AngleTrace {
    /// `f(t_k) + 2 pi k(t_k)`.
    pub fn unwrapped(&self) -> Vec<f64> {
        self.f_values
            .iter()
            .zip(&self.winding_correction)
            .map(|(f, k)| f + TAU * *k as f64)
            .collect()
    }

    /// Whether every unwrapped value lies in `[-pi/2 - tol, pi/2 + tol]`.
    pub fn within_monotone_band(&self, tol: f64) -> bool {
        self.unwrapped().iter().all(|f| f.abs() <= FRAC_PI_2 + tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.unwrapped().iter().fold(0.0, |a, f| a.max(f.abs()))
    }
}

/// Angle function of a sampled curve `alpha` and its image `beta` under a
/// map, using forward-difference tangents.
pub fn angle_function(source_curve: &[Point], mapped_points: &[Point]) -> Result<AngleTrace> {
    let m = source_curve.len();
    if m != mapped_points.len() {
        return Err(Error::SizeMismatch {
            source_len: m,
            target_len: mapped_points.len(),
        });
    }
    if m < 3 {
        return Err(Error::InvalidParameter(format!("angle function needs at least 3 samples, got {m}")));
    }
    let mut params = Vec::with_capacity(m - 1);
    let mut f_values = Vec::with_capacity(m - 1);
    let mut winding_correction = Vec::with_capacity(m - 1);
    let mut s = 0.0;
    let mut k = 0i64;
    let mut prev: Option<f64> = None;
    for i in 0..m - 1 {
        let alpha = source_curve[i + 1] - source_curve[i];
        let beta = mapped_points[i + 1] - mapped_points[i];
        if alpha.norm_sq() == 0.0 || beta.norm_sq() == 0.0 {
            return Err(Error::DegenerateTangent { index: i });
        }
        let f = signed_angle(beta, alpha);
        if let Some(p) = prev {
            let jump = f - p;
            if jump > PI {
                k -= 1;
            } else if jump < -PI {
                k += 1;
            }
        }
        prev = Some(f);
        params.push(s);
        f_values.push(f);
        winding_correction.push(k);
        s += alpha.norm();
    }
    Ok(AngleTrace {
        params,
        f_values,
        winding_correction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(m: usize, r: f64) -> Vec<Point> {
        (0..m).map(|i| Point::from_angle(TAU * i as f64 / m as f64) * r).collect()
    }

    #[test]
    fn identity_gives_zero() {
        let c = circle(50, 1.0);
        let t = angle_function(&c, &c).unwrap();
        assert!(t.f_values.iter().all(|f| *f == 0.0));
        assert!(t.within_monotone_band(0.0));
    }

    #[test]
    fn rotation_gives_constant_angle() {
        let c = circle(60, 1.0);
        let rotated: Vec<Point> = c.iter().map(|p| p.rotate(0.3)).collect();
        let t = angle_function(&c, &rotated).unwrap();
        assert!(t.f_values.iter().all(|f| (f + 0.3).abs() < 1e-12));
    }

    #[test]
    fn antipodal_map_leaves_band() {
        let c = circle(60, 1.0);
        let reversed: Vec<Point> = c.iter().map(|p| -*p).collect();
        let t = angle_function(&c, &reversed).unwrap();
        assert!((t.max_abs() - PI).abs() < 1e-9);
        assert!(!t.within_monotone_band(0.1));
    }

    #[test]
    fn unwrapping_tracks_a_full_turn() {
        // the image tangent spins once relative to the source tangent
        let m = 200;
        let line: Vec<Point> = (0..m).map(|i| Point::new(i as f64, 0.0)).collect();
        let mut img = vec![Point::ORIGIN];
        for i in 1..m {
            let dir = Point::from_angle(-TAU * i as f64 / m as f64);
            img.push(img[i - 1] + dir);
        }
        let t = angle_function(&line, &img).unwrap();
        let u = t.unwrapped();
        for w in u.windows(2) {
            assert!((w[1] - w[0]).abs() < 0.1);
        }
        assert!(u.last().unwrap() - u[0] > 5.0);
    }

    #[test]
    fn degenerate_inputs() {
        let c = vec![Point::ORIGIN, Point::new(1.0, 0.0), Point::new(1.0, 0.0)];
        assert!(matches!(angle_function(&c, &c), Err(Error::DegenerateTangent { index: 1 })));
        assert!(angle_function(&c[..2], &c[..2]).is_err());
    }
}
