use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CloudPair;
use crate::error::{Error, Result};

/// Floating-point slack `1e-9 * scale^2` for monotonicity inequalities.
pub fn tol_mono(pair: &CloudPair) -> f64 {
    let s = pair.scale();
    1e-9 * s * s
}

fn check_permutation(pair: &CloudPair, sigma: &[usize]) -> Result<()> {
    let n = pair.len();
    if sigma.len() != n {
        return Err(Error::SizeMismatch {
            source_len: n,
            target_len: sigma.len(),
        });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::InvalidParameter("sigma is not a permutation".into()));
        }
        seen[s] = true;
    }
    Ok(())
}

/// All pairs `i < j` with `<x_i - x_j, y_sigma(i) - y_sigma(j)> < -tol_mono`.
pub fn monotonicity_violations(pair: &CloudPair, sigma: &[usize]) -> Result<Vec<(usize, usize)>> {
    check_permutation(pair, sigma)?;
    let n = pair.len();
    let tol = tol_mono(pair);
    let x = &pair.source;
    let y: Vec<_> = sigma.iter().map(|&s| pair.target[s]).collect();
    let out = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let y = &y;
            (i + 1..n).filter_map(move |j| ((x[i] - x[j]).dot(y[i] - y[j]) < -tol).then_some((i, j)))
        })
        .collect();
    Ok(out)
}

/// Samples `trials` random `k`-cycles and counts those along which the
/// cyclic reassignment `c_i -> sigma(c_{i+1})` is cheaper than the current
/// pairing by more than `k * tol_mono`.
pub fn cyclical_monotonicity_check(
    pair: &CloudPair,
    sigma: &[usize],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    check_permutation(pair, sigma)?;
    let n = pair.len();
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!("cycle length {k} must lie in [2, {n}]")));
    }
    let tol = k as f64 * tol_mono(pair);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let cycle = sample(&mut rng, n, k).into_vec();
        let mut current = 0.0;
        let mut shifted = 0.0;
        for (idx, &c) in cycle.iter().enumerate() {
            let next = cycle[(idx + 1) % k];
            current += pair.source[c].dist_sq(pair.target[sigma[c]]);
            shifted += pair.source[c].dist_sq(pair.target[sigma[next]]);
        }
        if current > shifted + tol {
            failures += 1;
        }
    }
    Ok(failures)
}
