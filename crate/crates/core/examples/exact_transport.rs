//! Exact optimal pairing with its dual certificate, monotonicity checks and
//! an entropic plan for comparison.

use otlab::examples::{make_rectangle, make_squareman};
use otlab::transport::{
    cyclical_monotonicity_check, monotonicity_violations, solve_entropic, solve_exact, verify_certificate, CloudPair,
};

fn main() -> otlab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let omega = make_rectangle(1.0, 1.0)?;
    let lambda = make_squareman(1.0, 1.0, 0.6, 0.3)?;
    let pair = CloudPair::sample(&omega, &lambda, n, 0)?;

    let start = std::time::Instant::now();
    let pairing = solve_exact(&pair)?;
    println!("n={n}: cost {:.6} in {:.2?}", pairing.cost, start.elapsed());
    let cert = verify_certificate(&pair, &pairing);
    println!(
        "certificate: infeasibility {:.2e}, slackness {:.2e}, gap {:.2e}, tolerance {:.2e}, holds {}",
        cert.infeasibility,
        cert.slackness,
        cert.duality_gap,
        cert.tolerance,
        cert.holds()
    );
    println!(
        "monotonicity violations {}, failed 3-cycles {} of 10000",
        monotonicity_violations(&pair, &pairing.sigma)?.len(),
        cyclical_monotonicity_check(&pair, &pairing.sigma, 3, 10_000, 1)?
    );

    let small = CloudPair::new(pair.source[..10].to_vec(), pair.target[..10].to_vec())?;
    let exact = solve_exact(&small)?;
    for factor in [5e-3, 1e-4] {
        let reg = factor * small.scale().powi(2);
        let plan = solve_entropic(&small, reg, 200_000, 1e-9)?;
        let on_exact: f64 = (0..10).map(|i| plan.coupling[[i, exact.sigma[i]]]).sum();
        println!("entropic reg {reg:.2e}: {on_exact:.3} of the mass on the exact pairing, {} iterations", plan.iterations);
    }
    Ok(())
}
