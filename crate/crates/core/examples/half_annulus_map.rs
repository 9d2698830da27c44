//! Discrete optimal pairing on the half-annulus against the closed-form map
//! and its potential.

use otlab::analysis::study_half_annulus;
use otlab::examples::{half_annulus_map, half_annulus_potential};
use otlab::geometry::Point;

fn main() -> otlab::Result<()> {
    for n in [500, 1000, 2000, 4000] {
        let s = study_half_annulus(n, 0)?;
        println!(
            "n={n:>5}: mean error {:.4}, max error {:.4}, violations {}",
            s.mean_map_error, s.max_map_error, s.monotonicity_violations
        );
    }

    let p = Point::new(1.2, 0.3);
    let step = 1e-5;
    let phi = |q: Point| half_annulus_potential(q).expect("inside the annulus");
    let grad = Point::new(
        (phi(p + Point::new(step, 0.0)) - phi(p - Point::new(step, 0.0))) / (2.0 * step),
        (phi(p + Point::new(0.0, step)) - phi(p - Point::new(0.0, step))) / (2.0 * step),
    );
    let t = half_annulus_map(p)?;
    println!("at {p:?}: map {t:?}, potential gradient {grad:?}, difference {:.2e}", t.dist(grad));
    Ok(())
}
