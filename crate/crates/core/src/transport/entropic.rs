use ndarray::{Array1, Array2};
use rayon::prelude::*;

use super::CloudPair;
use crate::error::{Error, Result};

/// Entropic coupling and the state of the iteration that produced it.
#[derive(Debug, Clone)]
pub struct EntropicPlan {
    /// `n x n` nonnegative coupling with marginals `1/n`.
    pub coupling: Array2<f64>,
    pub iterations: usize,
    /// Largest column-marginal deviation; row marginals are exact.
    pub residual: f64,
}

fn log_sum_exp(values: impl Iterator<Item = f64>) -> f64 {
    let vals: Vec<f64> = values.collect();
    let m = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + vals.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// Iterations granted to each intermediate stage of the regularisation schedule.
const STAGE_ITERATIONS: usize = 50;

/// Log-domain Sinkhorn iteration for the quadratic cost with regularisation
/// `reg`, stopped when every column marginal is within `tol` of `1/n`.
///
/// The regularisation is annealed from the largest cost down to `reg` by
/// factors of 4, warm-starting each stage from the previous potentials;
/// `max_iter` bounds the total number of iterations.
pub fn solve_entropic(pair: &CloudPair, reg: f64, max_iter: usize, tol: f64) -> Result<EntropicPlan> {
    if !(reg > 0.0) || !reg.is_finite() {
        return Err(Error::InvalidParameter(format!("regularisation must be positive, got {reg}")));
    }
    let n = pair.len();
    let flat: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| pair.source[k / n].dist_sq(pair.target[k % n]))
        .collect();
    let cost = Array2::from_shape_vec((n, n), flat).expect("n * n entries");
    let max_cost = cost.iter().copied().fold(0.0, f64::max);
    let mut schedule = vec![reg];
    while schedule.last().unwrap() * 4.0 < max_cost {
        schedule.push(schedule.last().unwrap() * 4.0);
    }
    schedule.reverse();

    let log_w = -(n as f64).ln();
    let mut f = Array1::<f64>::zeros(n);
    let mut g = Array1::<f64>::zeros(n);
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    for (stage, &eps) in schedule.iter().enumerate() {
        let last = stage + 1 == schedule.len();
        let budget = if last { max_iter - iterations } else { STAGE_ITERATIONS.min(max_iter - iterations) };
        for _ in 0..budget {
            iterations += 1;
            for j in 0..n {
                g[j] = eps * (log_w - log_sum_exp((0..n).map(|i| (f[i] - cost[[i, j]]) / eps)));
            }
            for i in 0..n {
                f[i] = eps * (log_w - log_sum_exp((0..n).map(|j| (g[j] - cost[[i, j]]) / eps)));
            }
            residual = (0..n)
                .map(|j| {
                    let col = (0..n).map(|i| ((f[i] + g[j] - cost[[i, j]]) / eps).exp()).sum::<f64>();
                    (col - 1.0 / n as f64).abs()
                })
                .fold(0.0, f64::max);
            if residual <= tol {
                break;
            }
        }
        if last && residual <= tol {
            let coupling = Array2::from_shape_fn((n, n), |(i, j)| ((f[i] + g[j] - cost[[i, j]]) / reg).exp());
            return Ok(EntropicPlan {
                coupling,
                iterations,
                residual,
            });
        }
        if iterations >= max_iter {
            break;
        }
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    #[test]
    fn single_point_coupling() {
        let pair = CloudPair::new(vec![Point::new(0.0, 0.0)], vec![Point::new(3.0, 1.0)]).unwrap();
        let plan = solve_entropic(&pair, 0.1, 10, 1e-12).unwrap();
        assert!((plan.coupling[[0, 0]] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_points_concentrate_on_identity() {
        let pair = CloudPair::new(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
            vec![Point::new(2.0, 0.0), Point::new(3.0, 0.0)],
        )
        .unwrap();
        let plan = solve_entropic(&pair, 0.01, 1000, 1e-12).unwrap();
        assert!(plan.coupling[[0, 0]] + plan.coupling[[1, 1]] >= 0.99);
        for i in 0..2 {
            assert!((plan.coupling.row(i).sum() - 0.5).abs() < 1e-12);
            assert!((plan.coupling.column(i).sum() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn budget_exhaustion_reports_residual() {
        let x: Vec<Point> = (0..20).map(|i| Point::new(i as f64 * 0.05, 0.0)).collect();
        let y: Vec<Point> = (0..20).map(|i| Point::new(0.0, i as f64 * 0.05)).collect();
        let pair = CloudPair::new(x, y).unwrap();
        match solve_entropic(&pair, 1e-4, 1, 1e-15) {
            Err(Error::NotConverged { iterations, residual }) => {
                assert_eq!(iterations, 1);
                assert!(residual > 0.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(solve_entropic(&pair, 0.0, 10, 1e-9).is_err());
    }
}
