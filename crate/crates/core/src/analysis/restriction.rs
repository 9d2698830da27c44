use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::transport::{solve_exact, CloudPair};

/// Outcome of re-solving a restricted pairing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestrictionReport {
    pub selected: usize,
    /// Cost of the given pairing on the selected pairs.
    pub restricted_cost: f64,
    /// Optimal cost between the selected sources and targets.
    pub resolved_cost: f64,
    /// `restricted_cost` equals `resolved_cost` within `1e-9` relative.
    pub optimal: bool,
}

/// Restricts the pairing to the pairs whose target satisfies `region`,
/// re-solves that subproblem exactly and compares costs.
pub fn restriction_report(
    pair: &CloudPair,
    sigma: &[usize],
    region: impl Fn(Point) -> bool,
) -> Result<RestrictionReport> {
    let selected: Vec<usize> = (0..pair.len()).filter(|&i| region(pair.target[sigma[i]])).collect();
    if selected.len() < 2 {
        return Err(Error::EmptyRestriction {
            selected: selected.len(),
        });
    }
    let sub = CloudPair::new(
        selected.iter().map(|&i| pair.source[i]).collect(),
        selected.iter().map(|&i| pair.target[sigma[i]]).collect(),
    )?;
    let restricted_cost: f64 = (0..sub.len()).map(|k| sub.source[k].dist_sq(sub.target[k])).sum();
    let resolved_cost = solve_exact(&sub)?.cost;
    let optimal = (restricted_cost - resolved_cost).abs() <= 1e-9 * restricted_cost.abs().max(f64::MIN_POSITIVE);
    Ok(RestrictionReport {
        selected: selected.len(),
        restricted_cost,
        resolved_cost,
        optimal,
    })
}

/// Whether the restriction of the pairing to targets in `region` is still
/// optimal between its sources and targets.
pub fn restriction_optimality_check(pair: &CloudPair, sigma: &[usize], region: impl Fn(Point) -> bool) -> Result<bool> {
    restriction_report(pair, sigma, region).map(|r| r.optimal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> CloudPair {
        let x: Vec<Point> = (0..60).map(|i| Point::new((i as f64 * 0.713).fract(), (i as f64 * 0.291).fract())).collect();
        let y: Vec<Point> = (0..60)
            .map(|i| Point::new(2.0 + (i as f64 * 0.577).fract(), (i as f64 * 0.833).fract()))
            .collect();
        CloudPair::new(x, y).unwrap()
    }

    #[test]
    fn restrictions_of_optimal_pairings_are_optimal() {
        let p = pair();
        let sigma = solve_exact(&p).unwrap().sigma;
        assert!(restriction_optimality_check(&p, &sigma, |_| true).unwrap());
        assert!(restriction_optimality_check(&p, &sigma, |y| y.x < 2.5).unwrap());
    }

    #[test]
    fn swapped_pairing_is_caught() {
        let p = pair();
        let mut sigma = solve_exact(&p).unwrap().sigma;
        // swap the two pairs whose sources are farthest apart in x
        let (a, b) = (0..60)
            .flat_map(|i| (0..60).map(move |j| (i, j)))
            .max_by(|&(i, j), &(k, l)| {
                let d1 = p.source[i].dist(p.source[j]);
                let d2 = p.source[k].dist(p.source[l]);
                d1.partial_cmp(&d2).unwrap()
            })
            .unwrap();
        sigma.swap(a, b);
        assert!(!restriction_optimality_check(&p, &sigma, |_| true).unwrap());
    }

    #[test]
    fn tiny_region_rejected() {
        let p = pair();
        let sigma = solve_exact(&p).unwrap().sigma;
        assert!(matches!(
            restriction_optimality_check(&p, &sigma, |_| false),
            Err(Error::EmptyRestriction { selected: 0 })
        ));
    }
}
