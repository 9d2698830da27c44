//! Standard test domains, the named example registry, and the closed-form
//! optimal map from the half-annulus onto the half-disk.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use serde::Serialize;

use crate::criterion::{check_discontinuity, check_wolfson_urbas, min_arc_turning, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryCurve, BoundaryPiece, Domain, LabeledSegment, Point};

fn positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidDimensions(format!("{name} must be positive, got {value}")))
    }
}

/// Disk of radius `r` centred at the origin.
pub fn make_disk(r: f64) -> Result<Domain> {
    positive("radius", r)?;
    Domain::new(BoundaryCurve::new(vec![BoundaryPiece::arc((0.0, 0.0), r, 0.0, TAU, true)])?)
}

/// Rectangle `[0, a] x [0, b]`.
pub fn make_rectangle(a: f64, b: f64) -> Result<Domain> {
    positive("width", a)?;
    positive("height", b)?;
    Domain::new(BoundaryCurve::polygon(&[
        Point::new(0.0, 0.0),
        Point::new(a, 0.0),
        Point::new(a, b),
        Point::new(0.0, b),
    ])?)
}

/// Half-disk `{x > 0, x^2 + y^2 < r^2}`.
pub fn make_half_disk(r: f64) -> Result<Domain> {
    positive("radius", r)?;
    Domain::new(BoundaryCurve::new(vec![
        BoundaryPiece::arc((0.0, 0.0), r, -FRAC_PI_2, FRAC_PI_2, true),
        BoundaryPiece::segment((0.0, r), (0.0, -r)),
    ])?)
}

/// Half-annulus `{x > 0, r_in^2 < x^2 + y^2 < r_out^2}`.
pub fn make_half_annulus(r_in: f64, r_out: f64) -> Result<Domain> {
    positive("inner radius", r_in)?;
    positive("outer radius", r_out)?;
    if r_in >= r_out {
        return Err(Error::InvalidDimensions(format!(
            "inner radius {r_in} must be below outer radius {r_out}"
        )));
    }
    Domain::new(BoundaryCurve::new(vec![
        BoundaryPiece::arc((0.0, 0.0), r_out, -FRAC_PI_2, FRAC_PI_2, true),
        BoundaryPiece::segment((0.0, r_out), (0.0, r_in)),
        BoundaryPiece::arc((0.0, 0.0), r_in, FRAC_PI_2, -FRAC_PI_2, false),
        BoundaryPiece::segment((0.0, -r_in), (0.0, -r_out)),
    ])?)
}

/// Labelled corners of the squareman target.
///
/// The lower rectangle is `ABCG = [0, a] x [0, b]` and the upper rectangle
/// `CDEF = [a - d, a] x [b, b + c]` sits on its right end, so `C` lies on
/// `BD` and `F` is the only reflex corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquaremanPoints {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub e: Point,
    pub f: Point,
    pub g: Point,
}

impl SquaremanPoints {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        positive("a", a)?;
        positive("b", b)?;
        positive("c", c)?;
        positive("d", d)?;
        if d >= a {
            return Err(Error::InvalidDimensions(format!("squareman needs d < a, got d = {d}, a = {a}")));
        }
        Ok(SquaremanPoints {
            a: Point::new(0.0, 0.0),
            b: Point::new(a, 0.0),
            c: Point::new(a, b),
            d: Point::new(a, b + c),
            e: Point::new(a - d, b + c),
            f: Point::new(a - d, b),
            g: Point::new(0.0, b),
        })
    }

    /// Boundary segments of the target with their labels, counterclockwise.
    /// `FC` is the junction between the two rectangles and is not part of
    /// the boundary; it is listed last.
    pub fn target_segments(&self) -> Vec<LabeledSegment> {
        vec![
            LabeledSegment::new("AB", self.a, self.b),
            LabeledSegment::new("BD", self.b, self.d),
            LabeledSegment::new("DE", self.d, self.e),
            LabeledSegment::new("EF", self.e, self.f),
            LabeledSegment::new("GF", self.g, self.f),
            LabeledSegment::new("AG", self.a, self.g),
            LabeledSegment::new("FC", self.f, self.c),
        ]
    }

    /// Sides of the rectangular source `[0, a] x [0, b]`.
    pub fn source_segments(&self) -> Vec<LabeledSegment> {
        let a1 = self.a;
        let b1 = self.b;
        let d1 = self.c;
        let g1 = self.g;
        vec![
            LabeledSegment::new("A1B1", a1, b1),
            LabeledSegment::new("B1D1", b1, d1),
            LabeledSegment::new("D1G1", d1, g1),
            LabeledSegment::new("G1A1", g1, a1),
        ]
    }

    /// Upper rectangle `CDEF`.
    pub fn upper_contains(&self, p: Point) -> bool {
        p.x >= self.f.x && p.x <= self.c.x && p.y >= self.c.y && p.y <= self.d.y
    }
}

/// Squareman target: an `a x b` rectangle with a `d x c` rectangle standing
/// on its right end.
pub fn make_squareman(a: f64, b: f64, c: f64, d: f64) -> Result<Domain> {
    let s = SquaremanPoints::new(a, b, c, d)?;
    Domain::new(BoundaryCurve::polygon(&[s.a, s.b, s.d, s.e, s.f, s.g])?)
}

/// Two half-disk lobes of radius `lobe_r`, flat sides facing each other
/// `bridge_len` apart, joined by a centred bridge of width `bridge_w` with
/// concave fillets at the four junctions.
pub fn make_dumbbell(lobe_r: f64, bridge_w: f64, bridge_len: f64) -> Result<Domain> {
    Domain::new(dumbbell_curve(lobe_r, bridge_w, bridge_len, None)?)
}

/// Dumbbell whose lower notch is overhung by a lip of thickness
/// `lip_thickness` running from the left lobe along the bottom and stopping
/// `lip_gap` short of the right lobe. The boundary inside the notch turns
/// clockwise three times in a row, for a total of `-3 pi / 2`.
pub fn make_deep_notch_dumbbell(
    lobe_r: f64,
    bridge_w: f64,
    bridge_len: f64,
    lip_thickness: f64,
    lip_gap: f64,
) -> Result<Domain> {
    Domain::new(dumbbell_curve(lobe_r, bridge_w, bridge_len, Some((lip_thickness, lip_gap)))?)
}

fn dumbbell_curve(r: f64, w: f64, len: f64, lip: Option<(f64, f64)>) -> Result<BoundaryCurve> {
    positive("lobe radius", r)?;
    positive("bridge width", w)?;
    positive("bridge length", len)?;
    if w >= 2.0 * r {
        return Err(Error::InvalidDimensions(format!(
            "bridge width {w} must be below the lobe diameter {}",
            2.0 * r
        )));
    }
    let h = 0.5 * len;
    let hw = 0.5 * w;
    let rho = 0.2 * w.min(h).min(r - hw);
    let mut pieces = vec![
        BoundaryPiece::arc((h, 0.0), r, -FRAC_PI_2, FRAC_PI_2, true),
        BoundaryPiece::segment((h, r), (h, hw + rho)),
        BoundaryPiece::arc((h - rho, hw + rho), rho, 0.0, -FRAC_PI_2, false),
        BoundaryPiece::segment((h - rho, hw), (-h + rho, hw)),
        BoundaryPiece::arc((-h + rho, hw + rho), rho, -FRAC_PI_2, -PI, false),
        BoundaryPiece::segment((-h, hw + rho), (-h, r)),
        BoundaryPiece::arc((-h, 0.0), r, FRAC_PI_2, 3.0 * FRAC_PI_2, true),
    ];
    let mut wall_start = Point::new(-h, -r);
    if let Some((t, g)) = lip {
        positive("lip thickness", t)?;
        positive("lip gap", g)?;
        if g >= len {
            return Err(Error::InvalidDimensions(format!("lip gap {g} must be below the bridge length {len}")));
        }
        if -r + t >= -hw - rho {
            return Err(Error::InvalidDimensions(format!(
                "lip thickness {t} leaves no notch below the bridge"
            )));
        }
        let tip = h - g;
        pieces.push(BoundaryPiece::segment((-h, -r), (tip, -r)));
        pieces.push(BoundaryPiece::segment((tip, -r), (tip, -r + t)));
        pieces.push(BoundaryPiece::segment((tip, -r + t), (-h, -r + t)));
        wall_start = Point::new(-h, -r + t);
    }
    pieces.extend([
        BoundaryPiece::segment(wall_start, (-h, -hw - rho)),
        BoundaryPiece::arc((-h + rho, -hw - rho), rho, PI, FRAC_PI_2, false),
        BoundaryPiece::segment((-h + rho, -hw), (h - rho, -hw)),
        BoundaryPiece::arc((h - rho, -hw - rho), rho, FRAC_PI_2, 0.0, false),
        BoundaryPiece::segment((h, -hw - rho), (h, -r)),
    ]);
    BoundaryCurve::new(pieces)
}

/// Slack on the outer radius so that the rounded corner `(sqrt 2, 0)` is accepted.
const ROUNDING: f64 = 1e-12;

/// Closed-form optimal map from the half-annulus `{x > 0, 1 < |p|^2 < 2}`
/// onto the unit half-disk: `T(p) = p sqrt(1 - 1/|p|^2)`, so that
/// `|T(p)|^2 = |p|^2 - 1`. Points of the closed half-annulus are accepted.
pub fn half_annulus_map(p: Point) -> Result<Point> {
    let r2 = p.norm_sq();
    if !(p.x >= 0.0 && (1.0..=2.0 + ROUNDING).contains(&r2)) {
        return Err(Error::OutOfDomain { x: p.x, y: p.y });
    }
    Ok(p * (1.0 - 1.0 / r2).sqrt())
}

/// Convex potential of [`half_annulus_map`]:
/// `phi = (r sqrt(r^2 - 1) - ln(r + sqrt(r^2 - 1))) / 2`, defined for `r >= 1`.
pub fn half_annulus_potential(p: Point) -> Result<f64> {
    let r2 = p.norm_sq();
    if !(r2 >= 1.0) || !r2.is_finite() {
        return Err(Error::OutOfDomain { x: p.x, y: p.y });
    }
    let r = r2.sqrt();
    let s = (r2 - 1.0).sqrt();
    Ok(0.5 * (r * s - (r + s).ln()))
}

/// Radial map `|T(p)|^2 = |p|^2 - r_in^2` from a general half-annulus onto
/// the half-disk of radius `sqrt(r_out^2 - r_in^2)`. It is area preserving
/// and the gradient of a convex function, but only the radii `(1, sqrt 2)`
/// are covered by the known closed-form result; other radii are a conjecture.
pub fn radial_contraction_map(p: Point, r_in: f64, r_out: f64) -> Result<Point> {
    let r2 = p.norm_sq();
    if !(p.x >= 0.0 && r2 >= r_in * r_in && r2 <= r_out * r_out * (1.0 + ROUNDING)) {
        return Err(Error::OutOfDomain { x: p.x, y: p.y });
    }
    Ok(p * (1.0 - r_in * r_in / r2).sqrt())
}

/// Whether `radial_contraction_map` with these radii is the proven case.
pub fn radial_contraction_is_proven(r_in: f64, r_out: f64) -> bool {
    r_in == 1.0 && r_out == SQRT_2
}

/// Known answers for a named example.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expectations {
    pub discontinuity_verdict: Verdict,
    pub wolfson_urbas_verdict: Verdict,
    /// Whether the optimal map from omega to lambda is known to be continuous.
    pub continuous: Option<bool>,
    pub omega_min_arc: f64,
    pub lambda_min_arc: f64,
}

/// A source/target pair from the registry.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub name: &'static str,
    pub omega: Domain,
    pub lambda: Domain,
    pub expected: Option<Expectations>,
}

impl NamedExample {
    /// Compares the expectations with the criterion output; returns the
    /// mismatching field names.
    pub fn check_expectations(&self) -> Vec<&'static str> {
        let Some(e) = &self.expected else {
            return Vec::new();
        };
        let mut bad = Vec::new();
        if check_discontinuity(&self.omega, &self.lambda).verdict != e.discontinuity_verdict {
            bad.push("discontinuity_verdict");
        }
        if check_wolfson_urbas(&self.omega, &self.lambda).verdict != e.wolfson_urbas_verdict {
            bad.push("wolfson_urbas_verdict");
        }
        if (min_arc_turning(self.omega.discrete()).0 - e.omega_min_arc).abs() > 0.01 {
            bad.push("omega_min_arc");
        }
        if (min_arc_turning(self.lambda.discrete()).0 - e.lambda_min_arc).abs() > 0.01 {
            bad.push("lambda_min_arc");
        }
        bad
    }
}

/// Registry entry: a name and whether it can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub available: bool,
    pub description: &'static str,
}

pub const REGISTRY: &[RegistryEntry] = &[
    RegistryEntry {
        name: "half-annulus",
        available: true,
        description: "half-annulus 1 < r < sqrt 2 onto the unit half-disk (continuous, closed form)",
    },
    RegistryEntry {
        name: "squareman",
        available: true,
        description: "1 x 1 rectangle onto the squareman a=1 b=1 c=0.6 d=0.3 (discontinuous)",
    },
    RegistryEntry {
        name: "deep-notch-dumbbell",
        available: true,
        description: "2 x 2 square onto a dumbbell with an overhung notch turning by -3 pi/2",
    },
    RegistryEntry {
        name: "dumbbell",
        available: true,
        description: "2 x 2 square onto a filleted half-disk dumbbell (min arc turning -pi)",
    },
    RegistryEntry {
        name: "rectangle-disk",
        available: true,
        description: "2 x 1 rectangle onto the unit disk (convex target, continuous)",
    },
    RegistryEntry {
        name: "four-notch",
        available: false,
        description: "four-notch domains with equally curved boundaries (geometry not specified; unavailable)",
    },
];

/// Default squareman dimensions `(a, b, c, d)`.
pub const SQUAREMAN_DEFAULT: (f64, f64, f64, f64) = (1.0, 1.0, 0.6, 0.3);

/// Default deep-notch dumbbell parameters
/// `(lobe_r, bridge_w, bridge_len, lip_thickness, lip_gap)`.
pub const DEEP_NOTCH_DEFAULT: (f64, f64, f64, f64, f64) = (1.0, 0.4, 1.0, 0.25, 0.3);

/// Default dumbbell parameters `(lobe_r, bridge_w, bridge_len)`.
pub const DUMBBELL_DEFAULT: (f64, f64, f64) = (1.0, 0.4, 1.0);

/// Builds a registry example by name.
pub fn example(name: &str) -> Result<NamedExample> {
    let entry = REGISTRY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown example '{name}'; known: {}", registry_names())))?;
    if !entry.available {
        return Err(Error::InvalidParameter(format!("example '{name}' is unavailable: {}", entry.description)));
    }
    let ex = match name {
        "half-annulus" => NamedExample {
            name: entry.name,
            omega: make_half_annulus(1.0, SQRT_2)?,
            lambda: make_half_disk(1.0)?,
            expected: Some(Expectations {
                discontinuity_verdict: Verdict::Inconclusive,
                wolfson_urbas_verdict: Verdict::Inconclusive,
                continuous: Some(true),
                omega_min_arc: -PI,
                lambda_min_arc: 0.0,
            }),
        },
        "squareman" => {
            let (a, b, c, d) = SQUAREMAN_DEFAULT;
            NamedExample {
                name: entry.name,
                omega: make_rectangle(a, b)?,
                lambda: make_squareman(a, b, c, d)?,
                expected: Some(Expectations {
                    discontinuity_verdict: Verdict::Inconclusive,
                    wolfson_urbas_verdict: Verdict::Inconclusive,
                    continuous: Some(false),
                    omega_min_arc: 0.0,
                    lambda_min_arc: -FRAC_PI_2,
                }),
            }
        }
        "deep-notch-dumbbell" => {
            let (r, w, l, t, g) = DEEP_NOTCH_DEFAULT;
            NamedExample {
                name: entry.name,
                omega: make_rectangle(2.0, 2.0)?,
                lambda: make_deep_notch_dumbbell(r, w, l, t, g)?,
                expected: Some(Expectations {
                    discontinuity_verdict: Verdict::DiscontinuityGuaranteed,
                    wolfson_urbas_verdict: Verdict::NoDiffeomorphismGuaranteed,
                    continuous: Some(false),
                    omega_min_arc: 0.0,
                    lambda_min_arc: -1.5 * PI,
                }),
            }
        }
        "dumbbell" => {
            let (r, w, l) = DUMBBELL_DEFAULT;
            NamedExample {
                name: entry.name,
                omega: make_rectangle(2.0, 2.0)?,
                lambda: make_dumbbell(r, w, l)?,
                expected: Some(Expectations {
                    discontinuity_verdict: Verdict::Inconclusive,
                    wolfson_urbas_verdict: Verdict::Inconclusive,
                    continuous: None,
                    omega_min_arc: 0.0,
                    lambda_min_arc: -PI,
                }),
            }
        }
        "rectangle-disk" => NamedExample {
            name: entry.name,
            omega: make_rectangle(2.0, 1.0)?,
            lambda: make_disk(1.0)?,
            expected: Some(Expectations {
                discontinuity_verdict: Verdict::Inconclusive,
                wolfson_urbas_verdict: Verdict::Inconclusive,
                continuous: Some(true),
                omega_min_arc: 0.0,
                lambda_min_arc: 0.0,
            }),
        },
        _ => unreachable!("registry entry without constructor"),
    };
    Ok(ex)
}

/// Comma-separated registry listing, marking unavailable entries.
pub fn registry_names() -> String {
    REGISTRY
        .iter()
        .map(|e| {
            if e.available {
                e.name.to_string()
            } else {
                format!("{} (unavailable)", e.name)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
