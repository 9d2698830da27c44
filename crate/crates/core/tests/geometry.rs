use std::f64::consts::TAU;

use otlab::criterion::{check_discontinuity, check_wolfson_urbas, min_arc_turning};
use otlab::examples::{make_deep_notch_dumbbell, make_squareman, make_rectangle, DEEP_NOTCH_DEFAULT};
use otlab::geometry::{sample_uniform, Point};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn criteria_are_rigid_motion_invariant(theta in 0.0..TAU, tx in -5.0..5.0f64, ty in -5.0..5.0f64) {
        let (r, w, l, t, g) = DEEP_NOTCH_DEFAULT;
        let lambda = make_deep_notch_dumbbell(r, w, l, t, g).unwrap();
        let omega = make_rectangle(2.0, 2.0).unwrap();
        let moved = lambda.transformed(theta, Point::new(tx, ty)).unwrap();
        let shifted_omega = omega.transformed(-theta, Point::new(ty, tx)).unwrap();
        let base = check_discontinuity(&omega, &lambda);
        let other = check_discontinuity(&shifted_omega, &moved);
        prop_assert_eq!(base.verdict, other.verdict);
        prop_assert!((base.min_arc_value - other.min_arc_value).abs() < 1e-6);
        let wb = check_wolfson_urbas(&omega, &lambda);
        let wo = check_wolfson_urbas(&shifted_omega, &moved);
        prop_assert_eq!(wb.verdict, wo.verdict);

        let sq = make_squareman(1.0, 1.0, 0.6, 0.3).unwrap();
        let (a, _) = min_arc_turning(sq.discrete());
        let (b, _) = min_arc_turning(sq.transformed(theta, Point::new(tx, ty)).unwrap().discrete());
        prop_assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn samples_stay_inside(seed in 0u64..1000) {
        let sq = make_squareman(1.0, 1.0, 0.6, 0.3).unwrap();
        let pts = sample_uniform(&sq, 200, seed).unwrap();
        prop_assert!(pts.iter().all(|p| sq.contains(*p)));
        prop_assert_eq!(pts, sample_uniform(&sq, 200, seed).unwrap());
    }
}

#[test]
fn sampler_fills_the_upper_rectangle_in_proportion() {
    let sq = make_squareman(1.0, 1.0, 0.6, 0.3).unwrap();
    let pts = sample_uniform(&sq, 50_000, 1).unwrap();
    let upper = pts.iter().filter(|p| p.y > 1.0).count() as f64 / pts.len() as f64;
    let expected = 0.18 / 1.18;
    assert!((upper - expected).abs() < 0.01, "{upper} vs {expected}");
}
