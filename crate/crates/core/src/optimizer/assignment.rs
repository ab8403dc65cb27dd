use super::{check_feasible, finish, OptimizationResult, Optimality, OptimizerError, SolverConfig, TracePoint, SCORE_TOLERANCE};
use crate::criteria::Evaluator;

struct Solution {
    /// Column (local index) per row.
    columns: Vec<usize>,
    cost: f64,
    /// Row and column potentials, 1-based with a dummy at 0.
    u: Vec<f64>,
    v: Vec<f64>,
}

/// Minimum-cost assignment of `n` rows into `m >= n` columns
/// (shortest augmenting paths with potentials).
fn hungarian(n: usize, m: usize, cost: impl Fn(usize, usize) -> f64) -> Solution {
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut columns = vec![0; n];
    for j in 1..=m {
        if p[j] != 0 {
            columns[p[j] - 1] = j - 1;
        }
    }
    let cost_sum = columns.iter().enumerate().fold(0.0, |acc, (i, &j)| acc + cost(i, j));
    Solution {
        columns,
        cost: cost_sum,
        u,
        v,
    }
}

/// Maximum-benefit injective assignment of rows to columns, ties broken
/// towards the lexicographically smallest column vector. Returns the
/// assignment and the number of subproblems solved.
fn solve_lexicographic(rows: usize, cols: usize, benefit: impl Fn(usize, usize) -> f64) -> (Vec<usize>, u64) {
    let cost = |i: usize, j: usize| -benefit(i, j);
    let optimum = hungarian(rows, cols, cost);
    let mut solves = 1u64;
    let best_cost = optimum.cost;
    let mut current = optimum;
    let mut free: Vec<usize> = (0..cols).collect();
    let mut fixed_cost = 0.0;
    let mut chosen = Vec::with_capacity(rows);
    for t in 0..rows {
        let fallback = free[current.columns[0]];
        let mut pick = None;
        for (local, &g) in free.iter().enumerate() {
            let reduced = cost(t, g) - current.u[1] - current.v[local + 1];
            if reduced > SCORE_TOLERANCE {
                continue;
            }
            let rest: Vec<usize> = free.iter().copied().filter(|&c| c != g).collect();
            let sub = hungarian(rows - t - 1, rest.len(), |i, j| cost(t + 1 + i, rest[j]));
            solves += 1;
            if fixed_cost + cost(t, g) + sub.cost <= best_cost + SCORE_TOLERANCE {
                pick = Some((g, sub));
                break;
            }
        }
        let (g, next) = match pick {
            Some(found) => found,
            None => {
                let rest: Vec<usize> = free.iter().copied().filter(|&c| c != fallback).collect();
                solves += 1;
                (fallback, hungarian(rows - t - 1, rest.len(), |i, j| cost(t + 1 + i, rest[j])))
            }
        };
        fixed_cost += cost(t, g);
        free.retain(|&c| c != g);
        chosen.push(g);
        current = next;
    }
    (chosen, solves)
}

/// Maximum-benefit injective assignment for a `rows × cols` benefit matrix
/// (`rows <= cols`), lexicographically smallest among optimal ones.
pub fn solve_assignment(benefit: &[Vec<f64>]) -> Vec<usize> {
    let cols = benefit.first().map_or(0, Vec::len);
    assert!(benefit.len() <= cols || benefit.is_empty(), "more rows than columns");
    solve_lexicographic(benefit.len(), cols, |i, j| benefit[i][j]).0
}

/// Exact optimum for separable criterion lists via the benefit matrix.
///
/// `iterations_used` counts assignment subproblems solved.
pub fn assignment_exact(eval: &Evaluator, _config: &SolverConfig) -> Result<OptimizationResult, OptimizerError> {
    let matrix = eval.benefit_matrix().map_err(OptimizerError::NonSeparable)?;
    check_feasible(eval)?;
    let (assignment, solves) = solve_lexicographic(matrix.rows, matrix.cols, |t, g| matrix.get(t, g));
    let q = eval.quality(&assignment);
    Ok(finish(
        eval,
        assignment,
        solves,
        vec![TracePoint { iteration: solves, best: q }],
        Optimality::ProvenOptimal,
    ))
}
