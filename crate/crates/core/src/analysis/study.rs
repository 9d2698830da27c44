use serde::Serialize;

use super::oscillation::{
    chord_leaves_domain, cluster_jumps, default_h, default_threshold, detect_jump_set, local_oscillation, JumpCluster,
    JumpReport,
};
use super::restriction::{restriction_report, RestrictionReport};
use super::trace::{boundary_image_trace, inverse_image, locate_preimage_on, SegmentImage};
use crate::error::Result;
use crate::examples::{half_annulus_map, make_half_annulus, make_half_disk, make_rectangle, SquaremanPoints};
use crate::geometry::{Domain, LabeledSegment, Point};
use crate::transport::{cyclical_monotonicity_check, monotonicity_violations, solve_exact, CloudPair, Pairing};

/// Cycle length and trial count of the sampled cyclical-monotonicity test.
pub const CYCLE_LEN: usize = 3;
pub const CYCLE_TRIALS: usize = 10_000;

/// One named pass/fail check with the measured value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, value: f64, detail: String) -> Self {
        Check {
            name: name.into(),
            pass,
            value,
            detail,
        }
    }
}

fn cyclical_failures(pair: &CloudPair, sigma: &[usize], seed: u64) -> Result<usize> {
    if pair.len() < CYCLE_LEN {
        return Ok(0);
    }
    cyclical_monotonicity_check(pair, sigma, CYCLE_LEN, CYCLE_TRIALS, seed)
}

/// Solver output on the half-annulus compared with the closed-form map.
#[derive(Debug, Clone)]
pub struct HalfAnnulusStudy {
    pub omega: Domain,
    pub lambda: Domain,
    pub pair: CloudPair,
    pub pairing: Pairing,
    /// Mean of `|y_sigma(i) - T(x_i)|`.
    pub mean_map_error: f64,
    pub max_map_error: f64,
    pub monotonicity_violations: usize,
    pub cyclical_failures: usize,
}

impl HalfAnnulusStudy {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            Check::new(
                "mean_map_error",
                self.mean_map_error <= 0.10,
                self.mean_map_error,
                "mean distance to the closed-form image, limit 0.10".into(),
            ),
            Check::new(
                "monotonicity_violations",
                self.monotonicity_violations == 0,
                self.monotonicity_violations as f64,
                "pairs with negative monotonicity pairing".into(),
            ),
            Check::new(
                "cyclical_failures",
                self.cyclical_failures == 0,
                self.cyclical_failures as f64,
                format!("{CYCLE_LEN}-cycles out of {CYCLE_TRIALS} that lower the cost"),
            ),
        ]
    }
}

pub fn study_half_annulus(n: usize, seed: u64) -> Result<HalfAnnulusStudy> {
    let omega = make_half_annulus(1.0, std::f64::consts::SQRT_2)?;
    let lambda = make_half_disk(1.0)?;
    let pair = CloudPair::sample(&omega, &lambda, n, seed)?;
    let pairing = solve_exact(&pair)?;
    let mut errors = Vec::with_capacity(n);
    for (i, &s) in pairing.sigma.iter().enumerate() {
        errors.push(pair.target[s].dist(half_annulus_map(pair.source[i])?));
    }
    let mean_map_error = errors.iter().sum::<f64>() / n as f64;
    let max_map_error = errors.iter().copied().fold(0.0, f64::max);
    let monotonicity_violations = monotonicity_violations(&pair, &pairing.sigma)?.len();
    let cyclical_failures = cyclical_failures(&pair, &pairing.sigma, seed)?;
    Ok(HalfAnnulusStudy {
        omega,
        lambda,
        pair,
        pairing,
        mean_map_error,
        max_map_error,
        monotonicity_violations,
        cyclical_failures,
    })
}

/// Parameters of a squareman study. Unset lengths take their defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaremanConfig {
    pub dims: (f64, f64, f64, f64),
    pub n: usize,
    pub seed: u64,
    pub h: Option<f64>,
    pub threshold: Option<f64>,
}

/// Discrete map from the `a x b` rectangle onto the squareman with its jump
/// set and boundary structure.
#[derive(Debug, Clone)]
pub struct SquaremanStudy {
    pub points: SquaremanPoints,
    pub omega: Domain,
    pub lambda: Domain,
    pub pair: CloudPair,
    pub pairing: Pairing,
    /// Flagged jump report.
    pub jumps: JumpReport,
    pub clusters: Vec<JumpCluster>,
    /// Band images of the target segments, including `GE'`.
    pub trace: Vec<SegmentImage>,
    /// Image of the corner `E` under the inverse map.
    pub e1: Point,
    /// Point of `GF` whose image is nearest `e1`.
    pub e_prime: Point,
    pub restriction: RestrictionReport,
    pub monotonicity_violations: usize,
    pub cyclical_failures: usize,
}

pub fn study_squareman(config: SquaremanConfig) -> Result<SquaremanStudy> {
    let (a, b, c, d) = config.dims;
    let points = SquaremanPoints::new(a, b, c, d)?;
    let omega = make_rectangle(a, b)?;
    let lambda = crate::examples::make_squareman(a, b, c, d)?;
    let pair = CloudPair::sample(&omega, &lambda, config.n, config.seed)?;
    let pairing = solve_exact(&pair)?;
    let h = config.h.unwrap_or_else(|| default_h(omega.area(), config.n));
    let threshold = config.threshold.unwrap_or_else(|| default_threshold(h));
    let jumps = detect_jump_set(&local_oscillation(&pair, &pairing.sigma, h)?, threshold)?;
    let clusters = cluster_jumps(&jumps, 2.0 * h);

    let e1 = inverse_image(&pair, &pairing.sigma, points.e, 1);
    let segments = points.target_segments();
    let gf = segments.iter().find(|s| s.label == "GF").expect("squareman has GF");
    let e_prime = locate_preimage_on(&pair, &pairing.sigma, gf, e1, h)?;
    let mut traced = segments.clone();
    traced.push(LabeledSegment::new("GE'", points.g, e_prime));
    let trace = boundary_image_trace(&pair, &pairing.sigma, &traced, &points.source_segments(), h)?;
    let restriction = restriction_report(&pair, &pairing.sigma, |y| points.upper_contains(y))?;
    let monotonicity_violations = monotonicity_violations(&pair, &pairing.sigma)?.len();
    let cyclical_failures = cyclical_failures(&pair, &pairing.sigma, config.seed)?;
    Ok(SquaremanStudy {
        points,
        omega,
        lambda,
        pair,
        pairing,
        jumps,
        clusters,
        trace,
        e1,
        e_prime,
        restriction,
        monotonicity_violations,
        cyclical_failures,
    })
}

/// Spearman rank correlation, ties ranked by position.
fn rank_correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let rank = |v: &[f64]| {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
        let mut r = vec![0.0; v.len()];
        for (k, &i) in idx.iter().enumerate() {
            r[i] = k as f64;
        }
        r
    };
    let (rx, ry) = (rank(xs), rank(ys));
    let n = xs.len() as f64;
    let mean = (n - 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mean) * (b - mean);
        sxx += (a - mean) * (a - mean);
        syy += (b - mean) * (b - mean);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / (sxx * syy).sqrt()
}

impl SquaremanStudy {
    pub fn h(&self) -> f64 {
        self.jumps.h
    }

    pub fn threshold(&self) -> f64 {
        self.jumps.threshold.expect("study reports are flagged")
    }

    /// `|E E'|`.
    pub fn ee_prime(&self) -> f64 {
        self.points.e.dist(self.e_prime)
    }

    pub fn max_flagged_jump(&self) -> f64 {
        self.jumps.flagged_probes().map(|p| p.oscillation).fold(0.0, f64::max)
    }

    pub fn segment(&self, label: &str) -> &SegmentImage {
        self.trace.iter().find(|t| t.label == label).expect("traced segment")
    }

    fn segment_line(&self, label: &str) -> LabeledSegment {
        self.points
            .target_segments()
            .into_iter()
            .find(|s| s.label == label)
            .expect("squareman segment")
    }

    /// Flagged probes within `h` of the source boundary.
    pub fn flagged_near_boundary(&self) -> usize {
        let h = self.h();
        self.jumps
            .flagged_probes()
            .filter(|p| self.omega.distance_to_boundary(p.location) <= h)
            .count()
    }

    /// Flagged probes whose jump pair does not have one target within `3h`
    /// of `EF` and the other within `3h` of `GF`.
    pub fn straddle_failures(&self) -> usize {
        let r = 3.0 * self.h();
        let (ef, gf) = (self.segment_line("EF"), self.segment_line("GF"));
        self.jumps
            .flagged_probes()
            .filter(|p| {
                let (u, v) = p.jump_pair;
                let forward = ef.distance(u) <= r && gf.distance(v) <= r;
                let backward = ef.distance(v) <= r && gf.distance(u) <= r;
                !(forward || backward)
            })
            .count()
    }

    /// Flagged probes whose jump chord, trimmed by `3h` at both ends, stays
    /// inside the target.
    pub fn chord_failures(&self) -> usize {
        let h = self.h();
        self.jumps
            .flagged_probes()
            .filter(|p| !chord_leaves_domain(&self.lambda, p.jump_pair.0, p.jump_pair.1, 3.0 * h, 0.25 * h))
            .count()
    }

    /// Rank correlation between distance to `e1` and jump magnitude over
    /// the flagged probes.
    pub fn jump_trend(&self) -> f64 {
        let (dist, mag): (Vec<f64>, Vec<f64>) =
            self.jumps.flagged_probes().map(|p| (p.location.dist(self.e1), p.oscillation)).unzip();
        rank_correlation(&dist, &mag)
    }

    /// Fraction of `EF` band images farther than `h` from the source
    /// boundary, ignoring images within `radius` of `e1`.
    pub fn ef_interior_fraction(&self, radius: f64) -> f64 {
        let h = self.h();
        let sides = self.points.source_segments();
        let images: Vec<&Point> = self.segment("EF").images.iter().filter(|p| p.dist(self.e1) > radius).collect();
        if images.is_empty() {
            return 0.0;
        }
        let inside = images
            .iter()
            .filter(|p| super::trace::distance_to_segments(&sides, ***p) > h)
            .count();
        inside as f64 / images.len() as f64
    }

    pub fn checks(&self) -> Vec<Check> {
        let h = self.h();
        let flagged = self.jumps.flagged.len();
        let hd = |from: &str, to: &str| self.segment(from).hausdorff_to(to).expect("source side");
        let mut checks = vec![
            Check::new(
                "flagged_nonempty",
                flagged > 0,
                flagged as f64,
                format!("probes with oscillation above {:.6}", self.threshold()),
            ),
            Check::new(
                "flagged_interior",
                self.flagged_near_boundary() == 0,
                self.flagged_near_boundary() as f64,
                "flagged probes within h of the source boundary".into(),
            ),
            Check::new(
                "jump_pairs_straddle_ef_gf",
                flagged > 0 && self.straddle_failures() == 0,
                self.straddle_failures() as f64,
                "flagged jump pairs not joining the 3h bands of EF and GF".into(),
            ),
            Check::new(
                "jump_chords_leave_target",
                flagged > 0 && self.chord_failures() == 0,
                self.chord_failures() as f64,
                "flagged jump chords, trimmed by 3h, that stay inside the target".into(),
            ),
            Check::new(
                "jump_grows_toward_e1",
                self.jump_trend() < 0.0,
                self.jump_trend(),
                "rank correlation of distance to E1 against jump magnitude".into(),
            ),
            Check::new(
                "max_jump_near_ee_prime",
                (self.max_flagged_jump() - self.ee_prime()).abs() <= 3.0 * h,
                self.max_flagged_jump() - self.ee_prime(),
                format!("max flagged jump minus |EE'| = {:.6}, limit 3h", self.ee_prime()),
            ),
        ];
        for (from, to) in [("AB", "A1B1"), ("BD", "B1D1"), ("GE'", "D1G1"), ("AG", "G1A1")] {
            let d = hd(from, to);
            checks.push(Check::new(
                &format!("trace_{from}_onto_{to}"),
                d <= 5.0 * h,
                d,
                format!("one-sided Hausdorff distance from the {from} band images to {to}, limit 5h"),
            ));
        }
        let interior = self.ef_interior_fraction(5.0 * h);
        checks.push(Check::new(
            "trace_EF_interior",
            interior == 1.0,
            interior,
            "fraction of EF band images beyond 5h of E1 lying farther than h from the boundary".into(),
        ));
        checks.push(Check::new(
            "restriction_optimal",
            self.restriction.optimal,
            self.restriction.restricted_cost - self.restriction.resolved_cost,
            format!("{} pairs with targets in the upper rectangle", self.restriction.selected),
        ));
        checks.push(Check::new(
            "monotonicity_violations",
            self.monotonicity_violations == 0,
            self.monotonicity_violations as f64,
            "pairs with negative monotonicity pairing".into(),
        ));
        checks.push(Check::new(
            "cyclical_failures",
            self.cyclical_failures == 0,
            self.cyclical_failures as f64,
            format!("{CYCLE_LEN}-cycles out of {CYCLE_TRIALS} that lower the cost"),
        ));
        checks
    }
}
