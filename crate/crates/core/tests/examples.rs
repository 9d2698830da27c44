use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use otlab::examples::{half_annulus_map, make_half_annulus, make_half_disk, make_squareman, SquaremanPoints};
use otlab::geometry::{sample_uniform, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn closed_form_identity_and_anchor() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let r = (1.0 + rng.gen::<f64>()).sqrt();
        let t = -FRAC_PI_2 + PI * rng.gen::<f64>();
        let p = Point::from_angle(t) * r;
        let q = half_annulus_map(p).unwrap();
        assert!((q.norm_sq() - (p.norm_sq() - 1.0)).abs() < 1e-12);
        assert!((q.angle() - p.angle()).abs() < 1e-12 || q.norm() < 1e-6);
    }
    let q = half_annulus_map(Point::new(SQRT_2, 0.0)).unwrap();
    assert!(q.dist(Point::new(1.0, 0.0)) < 1e-12);
    assert!(half_annulus_map(Point::new(0.5, 0.0)).is_err());
    assert!(half_annulus_map(Point::new(-1.2, 0.0)).is_err());
}

#[test]
fn source_and_target_areas_agree() {
    let omega = make_half_annulus(1.0, SQRT_2).unwrap();
    let lambda = make_half_disk(1.0).unwrap();
    assert!((omega.area() - FRAC_PI_2).abs() < 1e-3);
    assert!((lambda.area() - FRAC_PI_2).abs() < 1e-3);
    assert!((make_squareman(1.0, 1.0, 0.6, 0.3).unwrap().area() - 1.18).abs() < 1e-9);
}

#[test]
fn closed_form_pushes_uniform_to_uniform() {
    let omega = make_half_annulus(1.0, SQRT_2).unwrap();
    let pts = sample_uniform(&omega, 100_000, 17).unwrap();
    let mut counts = [0usize; 100];
    for p in pts {
        let q = half_annulus_map(p).unwrap();
        let ring = ((q.norm_sq() * 10.0) as usize).min(9);
        let sector = (((q.angle() + FRAC_PI_2) / PI * 10.0) as usize).min(9);
        counts[ring * 10 + sector] += 1;
    }
    let expected = 1000.0;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let p_value = 1.0 - ChiSquared::new(99.0).unwrap().cdf(stat);
    assert!(p_value > 0.001, "chi-square {stat}, p = {p_value}");
}

#[test]
fn closed_form_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let draw = |rng: &mut ChaCha8Rng| {
        let r = (1.0 + rng.gen::<f64>()).sqrt();
        Point::from_angle(-FRAC_PI_2 + PI * rng.gen::<f64>()) * r
    };
    for _ in 0..1_000_000 {
        let p = draw(&mut rng);
        let q = draw(&mut rng);
        let d = (half_annulus_map(p).unwrap() - half_annulus_map(q).unwrap()).dot(p - q);
        assert!(d >= -1e-12, "{p:?} {q:?} {d}");
    }
}

#[test]
fn squareman_labels() {
    let s = SquaremanPoints::new(1.0, 1.0, 0.6, 0.3).unwrap();
    let labels: Vec<String> = s.target_segments().into_iter().map(|t| t.label).collect();
    for l in ["AB", "BD", "DE", "EF", "GF", "AG"] {
        assert!(labels.iter().any(|x| x == l), "{l}");
    }
    assert!(s.upper_contains(Point::new(0.9, 1.3)));
    assert!(!s.upper_contains(Point::new(0.5, 1.3)));
    assert!(!s.upper_contains(Point::new(0.9, 0.5)));
}
