use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{LabeledSegment, Point};
use crate::transport::CloudPair;

/// Where the targets near one labelled segment are sent by the inverse map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentImage {
    pub label: String,
    /// Number of targets within the band.
    pub band_targets: usize,
    /// Sources matched to those targets.
    #[serde(skip)]
    pub images: Vec<Point>,
    /// One-sided Hausdorff distance from `images` to each source segment.
    pub hausdorff: Vec<(String, f64)>,
    /// Fraction of images farther than the band from every source segment.
    pub interior_fraction: f64,
}

impl SegmentImage {
    pub fn hausdorff_to(&self, label: &str) -> Option<f64> {
        self.hausdorff.iter().find(|(l, _)| l == label).map(|(_, d)| *d)
    }
}

/// Distance from `p` to the nearest of `segments`.
pub fn distance_to_segments(segments: &[LabeledSegment], p: Point) -> f64 {
    segments.iter().map(|s| s.distance(p)).fold(f64::INFINITY, f64::min)
}

/// For each target segment, collects the targets within `band`, follows the
/// pairing back to their sources and measures how far those sources are
/// from each source segment.
pub fn boundary_image_trace(
    pair: &CloudPair,
    sigma: &[usize],
    target_segments: &[LabeledSegment],
    source_segments: &[LabeledSegment],
    band: f64,
) -> Result<Vec<SegmentImage>> {
    if !(band > 0.0) {
        return Err(Error::InvalidParameter(format!("band must be positive, got {band}")));
    }
    let mut out = Vec::with_capacity(target_segments.len());
    for seg in target_segments {
        let images: Vec<Point> = (0..pair.len())
            .filter(|&i| seg.distance(pair.target[sigma[i]]) <= band)
            .map(|i| pair.source[i])
            .collect();
        if images.is_empty() {
            return Err(Error::EmptyBand {
                label: seg.label.clone(),
            });
        }
        let hausdorff = source_segments
            .iter()
            .map(|s| {
                let d = images.iter().map(|p| s.distance(*p)).fold(0.0, f64::max);
                (s.label.clone(), d)
            })
            .collect();
        let interior = images
            .iter()
            .filter(|p| distance_to_segments(source_segments, **p) > band)
            .count();
        out.push(SegmentImage {
            label: seg.label.clone(),
            band_targets: images.len(),
            interior_fraction: interior as f64 / images.len() as f64,
            images,
            hausdorff,
        });
    }
    Ok(out)
}

/// Mean of `value(i)` over the `k` indices whose `key(i)` is nearest `p`,
/// ties broken by index.
fn nearest_mean(len: usize, k: usize, p: Point, key: impl Fn(usize) -> Point, value: impl Fn(usize) -> Point) -> Point {
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| key(a).dist_sq(p).total_cmp(&key(b).dist_sq(p)).then(a.cmp(&b)));
    let k = k.clamp(1, len);
    order[..k].iter().fold(Point::ORIGIN, |acc, &i| acc + value(i)) * (1.0 / k as f64)
}

/// Image of `p` under the inverse map: the mean source of the `k` targets
/// nearest to `p`.
pub fn inverse_image(pair: &CloudPair, sigma: &[usize], p: Point, k: usize) -> Point {
    nearest_mean(pair.len(), k, p, |i| pair.target[sigma[i]], |i| pair.source[i])
}

/// Image of `p` under the forward map: the mean matched target of the `k`
/// sources nearest to `p`.
pub fn forward_image(pair: &CloudPair, sigma: &[usize], p: Point, k: usize) -> Point {
    nearest_mean(pair.len(), k, p, |i| pair.source[i], |i| pair.target[sigma[i]])
}

/// The point of `segment` whose band image comes closest to `image`:
/// among the targets within `band` of the segment, the one whose source is
/// nearest `image`, projected onto the segment.
pub fn locate_preimage_on(
    pair: &CloudPair,
    sigma: &[usize],
    segment: &LabeledSegment,
    image: Point,
    band: f64,
) -> Result<Point> {
    (0..pair.len())
        .filter(|&i| segment.distance(pair.target[sigma[i]]) <= band)
        .min_by(|&a, &b| pair.source[a].dist_sq(image).total_cmp(&pair.source[b].dist_sq(image)))
        .map(|i| segment.project(pair.target[sigma[i]]))
        .ok_or_else(|| Error::EmptyBand {
            label: segment.label.clone(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_sides() -> Vec<LabeledSegment> {
        vec![
            LabeledSegment::new("bottom", Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
            LabeledSegment::new("right", Point::new(1.0, 0.0), Point::new(1.0, 1.0)),
            LabeledSegment::new("top", Point::new(1.0, 1.0), Point::new(0.0, 1.0)),
            LabeledSegment::new("left", Point::new(0.0, 1.0), Point::new(0.0, 0.0)),
        ]
    }

    #[test]
    fn identity_maps_bands_to_themselves() {
        let x: Vec<Point> = (0..400).map(|i| Point::new((i % 20) as f64 / 19.0, (i / 20) as f64 / 19.0)).collect();
        let pair = CloudPair::new(x.clone(), x).unwrap();
        let sigma: Vec<usize> = (0..400).collect();
        let sides = square_sides();
        let trace = boundary_image_trace(&pair, &sigma, &sides, &sides, 0.06).unwrap();
        for t in &trace {
            assert!(t.hausdorff_to(&t.label).unwrap() <= 3.0 * 0.06);
            assert_eq!(t.interior_fraction, 0.0);
        }
        let q = inverse_image(&pair, &sigma, Point::new(0.0, 0.0), 1);
        assert_eq!(q, Point::new(0.0, 0.0));
        let c = forward_image(&pair, &sigma, Point::new(0.5, 0.5), 4);
        assert!(c.dist(Point::new(0.5, 0.5)) < 1e-12);
        let p = locate_preimage_on(&pair, &sigma, &sides[0], Point::new(0.5, 0.2), 0.06).unwrap();
        assert!((p.x - 0.5).abs() < 0.06 && p.y == 0.0);
    }

    #[test]
    fn empty_band_is_an_error() {
        let pair = CloudPair::new(vec![Point::new(0.5, 0.5); 2], vec![Point::new(0.5, 0.5); 2]).unwrap();
        let sides = square_sides();
        assert!(matches!(
            boundary_image_trace(&pair, &[0, 1], &sides, &sides, 0.1),
            Err(Error::EmptyBand { .. })
        ));
    }
}
