//! Angle function along interior circles under the discrete map from a
//! rectangle onto the disk.

use std::f64::consts::{FRAC_PI_2, TAU};

use otlab::analysis::{angle_function, forward_image};
use otlab::examples::{make_disk, make_rectangle};
use otlab::geometry::Point;
use otlab::transport::{solve_exact, CloudPair};

fn main() -> otlab::Result<()> {
    let pair = CloudPair::sample(&make_rectangle(2.0, 1.0)?, &make_disk(1.0)?, 4000, 0)?;
    let sigma = solve_exact(&pair)?.sigma;
    for radius in [0.2, 0.3, 0.4] {
        let curve: Vec<Point> = (0..=32)
            .map(|k| Point::new(1.0, 0.5) + Point::from_angle(TAU * k as f64 / 32.0) * radius)
            .collect();
        let image: Vec<Point> = curve.iter().map(|p| forward_image(&pair, &sigma, *p, 16)).collect();
        let trace = angle_function(&curve, &image)?;
        println!(
            "radius {radius}: max |f| = {:.4} (band edge {:.4}), inside band {}",
            trace.max_abs(),
            FRAC_PI_2,
            trace.within_monotone_band(0.1)
        );
    }
    Ok(())
}
