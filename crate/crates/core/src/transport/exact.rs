//! Exact assignment with squared Euclidean cost.
//!
//! Jonker–Volgenant: column reduction, reduction transfer, two rounds of
//! augmenting row reduction, then shortest augmenting paths for the rows that
//! are still free. Costs are evaluated on the fly from coordinate arrays, so
//! memory stays linear in `n`.

use rayon::prelude::*;
use serde::Serialize;

use super::CloudPair;
use crate::error::Result;

/// Exact optimal assignment with Kantorovich dual potentials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pairing {
    /// `sigma[i]` is the target index assigned to source `i`.
    pub sigma: Vec<usize>,
    /// `sum_i |x_i - y_sigma(i)|^2`.
    pub cost: f64,
    pub dual_u: Vec<f64>,
    pub dual_v: Vec<f64>,
}

/// Largest violations of the dual certificate, in cost units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    /// `max_{i,j} (u_i + v_j - c_ij)`, clamped below at 0.
    pub infeasibility: f64,
    /// `max_i |u_i + v_sigma(i) - c_{i sigma(i)}|`.
    pub slackness: f64,
    /// `|cost - sum_i (u_i + v_sigma(i))|`.
    pub duality_gap: f64,
    /// Tolerance `1e-7 * scale^2`, with `scale` the bounding-box diagonal.
    pub tolerance: f64,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.infeasibility <= self.tolerance
            && self.slackness <= self.tolerance
            && self.duality_gap <= self.tolerance
    }
}

/// Relative gap under which two reduced costs are treated as tied during
/// augmenting row reduction, so rounding cannot make a row bounce forever.
const TIE_EPS: f64 = 1e-14;

struct Costs {
    sx: Vec<f64>,
    sy: Vec<f64>,
    tx: Vec<f64>,
    ty: Vec<f64>,
}

impl Costs {
    fn new(pair: &CloudPair) -> Self {
        Costs {
            sx: pair.source.iter().map(|p| p.x).collect(),
            sy: pair.source.iter().map(|p| p.y).collect(),
            tx: pair.target.iter().map(|p| p.x).collect(),
            ty: pair.target.iter().map(|p| p.y).collect(),
        }
    }

    #[inline(always)]
    fn c(&self, i: usize, j: usize) -> f64 {
        let dx = self.sx[i] - self.tx[j];
        let dy = self.sy[i] - self.ty[j];
        dx * dx + dy * dy
    }
}

const NONE: usize = usize::MAX;

/// Problems above this size are warm-started from the duals of a subsample.
const WARM_START_MIN: usize = 1024;
/// Subsampling stride of the warm start.
const WARM_START_STRIDE: usize = 4;

struct State {
    row_sol: Vec<usize>,
    col_sol: Vec<usize>,
    v: Vec<f64>,
    free: Vec<usize>,
}

/// Globally optimal assignment between equal-size clouds. Ties are broken by
/// scan order, so the output is a deterministic function of the input.
///
/// Large problems first solve the subproblem on every fourth point of each
/// cloud and use its column potentials, extended to all targets by nearest
/// neighbour, as starting prices. The starting prices only affect speed.
pub fn solve_exact(pair: &CloudPair) -> Result<Pairing> {
    let n = pair.len();
    let costs = Costs::new(pair);
    let tie = TIE_EPS * pair.scale() * pair.scale();

    let mut state = if n > WARM_START_MIN {
        let sub = CloudPair {
            source: pair.source.iter().step_by(WARM_START_STRIDE).copied().collect(),
            target: pair.target.iter().step_by(WARM_START_STRIDE).copied().collect(),
        };
        let coarse = solve_exact(&sub)?;
        let nearest: Vec<usize> = pair
            .target
            .par_iter()
            .map(|y| {
                let mut best = 0;
                let mut best_d = f64::INFINITY;
                for (k, z) in sub.target.iter().enumerate() {
                    let d = y.dist_sq(*z);
                    if d < best_d {
                        best_d = d;
                        best = k;
                    }
                }
                best
            })
            .collect();
        let mut partner = vec![0usize; sub.len()];
        for (i, &j) in coarse.sigma.iter().enumerate() {
            partner[j] = i;
        }
        // first-order extension: the y-gradient of v at a matched pair (x, z) is 2 (z - x)
        let v = pair
            .target
            .iter()
            .zip(&nearest)
            .map(|(y, &k)| {
                let z = sub.target[k];
                coarse.dual_v[k] + 2.0 * (z - sub.source[partner[k]]).dot(*y - z)
            })
            .collect();
        from_prices(&costs, v)
    } else {
        column_reduction(&costs)
    };
    augmenting_row_reduction(&costs, &mut state, tie);
    augment(&costs, &mut state);

    let State { row_sol: sigma, v, .. } = state;
    let dual_u: Vec<f64> = (0..n).map(|i| costs.c(i, sigma[i]) - v[sigma[i]]).collect();
    let cost = (0..n).map(|i| costs.c(i, sigma[i])).sum();
    Ok(Pairing {
        sigma,
        cost,
        dual_u,
        dual_v: v,
    })
}

/// Column reduction followed by reduction transfer.
fn column_reduction(costs: &Costs) -> State {
    let n = costs.sx.len();
    let mut row_sol = vec![NONE; n];
    let mut col_sol = vec![NONE; n];
    let mut v = vec![0.0; n];
    let col_min: Vec<(usize, f64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut imin = 0;
            let mut min = costs.c(0, j);
            for i in 1..n {
                let c = costs.c(i, j);
                if c < min {
                    min = c;
                    imin = i;
                }
            }
            (imin, min)
        })
        .collect();
    let mut matches = vec![0u32; n];
    for j in (0..n).rev() {
        let (imin, min) = col_min[j];
        v[j] = min;
        matches[imin] += 1;
        if matches[imin] == 1 {
            row_sol[imin] = j;
            col_sol[j] = imin;
        }
    }

    let mut free = Vec::new();
    for i in 0..n {
        if matches[i] == 0 {
            free.push(i);
        } else if matches[i] == 1 {
            let j1 = row_sol[i];
            let mut min = f64::INFINITY;
            for j in 0..n {
                if j != j1 {
                    min = min.min(costs.c(i, j) - v[j]);
                }
            }
            if min.is_finite() {
                v[j1] -= min;
            }
        }
    }
    State {
        row_sol,
        col_sol,
        v,
        free,
    }
}

/// Each row takes its cheapest column under the given prices if nobody
/// holds it yet.
fn from_prices(costs: &Costs, v: Vec<f64>) -> State {
    let n = costs.sx.len();
    let best: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut jmin = 0;
            let mut min = costs.c(i, 0) - v[0];
            for j in 1..n {
                let h = costs.c(i, j) - v[j];
                if h < min {
                    min = h;
                    jmin = j;
                }
            }
            jmin
        })
        .collect();
    let mut row_sol = vec![NONE; n];
    let mut col_sol = vec![NONE; n];
    let mut free = Vec::new();
    for (i, &j) in best.iter().enumerate() {
        if col_sol[j] == NONE {
            col_sol[j] = i;
            row_sol[i] = j;
        } else {
            free.push(i);
        }
    }
    State {
        row_sol,
        col_sol,
        v,
        free,
    }
}

/// Two rounds of augmenting row reduction. A row bounced more than a
/// bounded number of times is left for the shortest-path phase.
fn augmenting_row_reduction(costs: &Costs, state: &mut State, tie: f64) {
    let n = costs.sx.len();
    let State {
        row_sol,
        col_sol,
        v,
        free,
    } = state;
    let cap = 16 * n + 64;
    for _ in 0..2 {
        let mut queue = std::mem::take(free);
        let mut k = 0;
        let mut steps = 0;
        while k < queue.len() {
            let i = queue[k];
            k += 1;
            steps += 1;
            let mut umin = costs.c(i, 0) - v[0];
            let mut j1 = 0;
            let mut usubmin = f64::INFINITY;
            let mut j2 = NONE;
            for j in 1..n {
                let h = costs.c(i, j) - v[j];
                if h < usubmin {
                    if h >= umin {
                        usubmin = h;
                        j2 = j;
                    } else {
                        usubmin = umin;
                        umin = h;
                        j2 = j1;
                        j1 = j;
                    }
                }
            }
            let strict = usubmin - umin > tie;
            let mut i0 = col_sol[j1];
            if strict {
                v[j1] -= usubmin - umin;
            } else if i0 != NONE && j2 != NONE {
                j1 = j2;
                i0 = col_sol[j2];
            }
            if i0 != NONE {
                row_sol[i0] = NONE;
            }
            row_sol[i] = j1;
            col_sol[j1] = i;
            if i0 != NONE {
                if strict && steps < cap {
                    k -= 1;
                    queue[k] = i0;
                } else {
                    free.push(i0);
                }
            }
        }
    }
}

/// Dijkstra-style shortest augmenting path from every remaining free row.
fn augment(costs: &Costs, state: &mut State) {
    let n = costs.sx.len();
    let State {
        row_sol,
        col_sol,
        v,
        free,
    } = state;
    let mut d = vec![0.0; n];
    let mut pred = vec![0usize; n];
    let mut col_list: Vec<usize> = (0..n).collect();
    for &f in free.iter() {
        for j in 0..n {
            col_list[j] = j;
            d[j] = costs.c(f, j) - v[j];
            pred[j] = f;
        }
        let mut low = 0;
        let mut up = 0;
        let mut last = 0;
        let mut min = 0.0;
        let end_of_path;
        'search: loop {
            if up == low {
                last = low;
                min = d[col_list[up]];
                up += 1;
                for k in up..n {
                    let j = col_list[k];
                    let h = d[j];
                    if h <= min {
                        if h < min {
                            up = low;
                            min = h;
                        }
                        col_list[k] = col_list[up];
                        col_list[up] = j;
                        up += 1;
                    }
                }
                for &j in &col_list[low..up] {
                    if col_sol[j] == NONE {
                        end_of_path = j;
                        break 'search;
                    }
                }
            }
            let j1 = col_list[low];
            low += 1;
            let i = col_sol[j1];
            let h = costs.c(i, j1) - v[j1] - min;
            for k in up..n {
                let j = col_list[k];
                let v2 = costs.c(i, j) - v[j] - h;
                if v2 < d[j] {
                    pred[j] = i;
                    if v2 == min {
                        if col_sol[j] == NONE {
                            end_of_path = j;
                            break 'search;
                        }
                        col_list[k] = col_list[up];
                        col_list[up] = j;
                        up += 1;
                    }
                    d[j] = v2;
                }
            }
        }
        for &j in &col_list[..last] {
            v[j] += d[j] - min;
        }
        let mut j = end_of_path;
        loop {
            let i = pred[j];
            col_sol[j] = i;
            let next = row_sol[i];
            row_sol[i] = j;
            if i == f {
                break;
            }
            j = next;
        }
    }
}

/// Checks dual feasibility, complementary slackness and strong duality.
pub fn verify_certificate(pair: &CloudPair, pairing: &Pairing) -> Certificate {
    let n = pair.len();
    let costs = Costs::new(pair);
    let scale = pair.scale();
    let tolerance = 1e-7 * scale * scale;
    let u = &pairing.dual_u;
    let v = &pairing.dual_v;
    let infeasibility = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut worst = 0.0f64;
            for j in 0..n {
                worst = worst.max(u[i] + v[j] - costs.c(i, j));
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    let slackness = (0..n)
        .map(|i| (u[i] + v[pairing.sigma[i]] - costs.c(i, pairing.sigma[i])).abs())
        .fold(0.0, f64::max);
    let dual_value: f64 = (0..n).map(|i| u[i] + v[pairing.sigma[i]]).sum();
    Certificate {
        infeasibility,
        slackness,
        duality_gap: (pairing.cost - dual_value).abs(),
        tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cost_of(pair: &CloudPair, sigma: &[usize]) -> f64 {
        sigma.iter().enumerate().map(|(i, &j)| pair.source[i].dist_sq(pair.target[j])).sum()
    }

    /// Minimum cost over all permutations by Heap's algorithm.
    fn brute_force(pair: &CloudPair) -> f64 {
        let n = pair.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut best = cost_of(pair, &perm);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                best = best.min(cost_of(pair, &perm));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    fn random_pair(n: usize, seed: u64) -> CloudPair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = |k: usize| -> Vec<Point> { (0..k).map(|_| Point::new(rng.gen(), rng.gen())).collect() };
        let x = pts(n);
        let y = pts(n);
        CloudPair::new(x, y).unwrap()
    }

    #[test]
    fn two_point_example() {
        let pair = CloudPair::new(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
            vec![Point::new(2.0, 0.0), Point::new(3.0, 0.0)],
        )
        .unwrap();
        let p = solve_exact(&pair).unwrap();
        assert_eq!(p.sigma, vec![0, 1]);
        assert_eq!(p.cost, 8.0);
        assert!(verify_certificate(&pair, &p).holds());
    }

    #[test]
    fn identical_clouds_map_to_themselves() {
        let pair = random_pair(50, 1);
        let same = CloudPair::new(pair.source.clone(), pair.source.clone()).unwrap();
        let p = solve_exact(&same).unwrap();
        assert_eq!(p.sigma, (0..50).collect::<Vec<_>>());
        assert_eq!(p.cost, 0.0);
    }

    #[test]
    fn single_point() {
        let pair = CloudPair::new(vec![Point::new(0.0, 0.0)], vec![Point::new(1.0, 1.0)]).unwrap();
        let p = solve_exact(&pair).unwrap();
        assert_eq!(p.sigma, vec![0]);
        assert!(verify_certificate(&pair, &p).holds());
    }

    #[test]
    fn six_points_match_exhaustive_search() {
        let pair = random_pair(6, 7);
        let p = solve_exact(&pair).unwrap();
        assert!((p.cost - brute_force(&pair)).abs() <= 1e-12);
    }

    #[test]
    fn warm_started_solve_is_certified() {
        let pair = random_pair(1500, 11);
        let p = solve_exact(&pair).unwrap();
        assert!(verify_certificate(&pair, &p).holds());
        let mut seen = vec![false; 1500];
        for &s in &p.sigma {
            assert!(!seen[s]);
            seen[s] = true;
        }
    }

    #[test]
    fn deterministic_output() {
        let pair = random_pair(300, 5);
        assert_eq!(solve_exact(&pair).unwrap(), solve_exact(&pair).unwrap());
    }

    #[test]
    fn size_mismatch_rejected() {
        assert!(matches!(
            CloudPair::new(vec![Point::new(0.0, 0.0)], vec![]),
            Err(crate::Error::SizeMismatch { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn optimal_on_small_instances(seed in 0u64..1_000_000, n in 1usize..=8) {
            let pair = random_pair(n, seed);
            let p = solve_exact(&pair).unwrap();
            let best = brute_force(&pair);
            prop_assert!((p.cost - best).abs() <= 1e-12 * best.max(1.0));
            prop_assert!(verify_certificate(&pair, &p).holds());
        }

        #[test]
        fn translation_leaves_sigma_unchanged(seed in 0u64..1000, tx in -5.0f64..5.0, ty in -5.0f64..5.0) {
            let pair = random_pair(40, seed);
            let moved = CloudPair::new(
                pair.source.clone(),
                pair.target.iter().map(|y| *y + Point::new(tx, ty)).collect(),
            ).unwrap();
            prop_assert_eq!(solve_exact(&pair).unwrap().sigma, solve_exact(&moved).unwrap().sigma);
        }
    }
}
