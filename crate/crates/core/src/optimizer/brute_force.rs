use num_bigint::BigUint;

use super::{check_feasible, finish, OptimizationResult, Optimality, OptimizerError, SolverConfig, TracePoint, SCORE_TOLERANCE};
use crate::criteria::Evaluator;

/// Number of injective mappings from `k` tasks into `l` gestures: l!/(l−k)!.
pub fn injective_count(k: usize, l: usize) -> BigUint {
    if k > l {
        return BigUint::from(0u32);
    }
    ((l - k + 1)..=l).fold(BigUint::from(1u32), |acc, x| acc * BigUint::from(x))
}

/// Visits every injective completion of `prefix` in lexicographic order.
/// Stops early when `visit` returns `false`; returns whether it ran to the end.
fn walk(prefix: &mut Vec<usize>, used: &mut [bool], k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if prefix.len() == k {
        return visit(prefix);
    }
    for g in 0..used.len() {
        if used[g] {
            continue;
        }
        used[g] = true;
        prefix.push(g);
        let go_on = walk(prefix, used, k, visit);
        prefix.pop();
        used[g] = false;
        if !go_on {
            return false;
        }
    }
    true
}

fn walk_branch(first: usize, l: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut used = vec![false; l];
    used[first] = true;
    let mut prefix = vec![first];
    walk(&mut prefix, &mut used, k, &mut visit);
}

/// Exhaustive search over all injective mappings; the reference oracle.
///
/// `iterations_used` is the number of mappings scored in the search pass.
pub fn brute_force_optimal(eval: &Evaluator, config: &SolverConfig) -> Result<OptimizationResult, OptimizerError> {
    check_feasible(eval)?;
    let (k, l) = (eval.task_count(), eval.gesture_count());
    let count = injective_count(k, l);
    if count > BigUint::from(config.brute_force_guard) {
        return Err(OptimizerError::GuardExceeded {
            count,
            guard: config.brute_force_guard,
        });
    }
    let visited = u64::try_from(&count).expect("count is below the guard");
    if k == 0 {
        let q = eval.quality(&[]);
        return Ok(finish(eval, Vec::new(), visited, vec![TracePoint { iteration: visited, best: q }], Optimality::ProvenOptimal));
    }

    let exec = config.execution();
    let best = exec
        .max_range(l, |first| {
            let mut best = f64::NEG_INFINITY;
            walk_branch(first, l, k, |a| {
                best = best.max(eval.quality(a));
                true
            });
            best
        })
        .expect("at least one gesture");

    let mut winner = None;
    for first in 0..l {
        walk_branch(first, l, k, |a| {
            if eval.quality(a) >= best - SCORE_TOLERANCE {
                winner = Some(a.to_vec());
                false
            } else {
                true
            }
        });
        if winner.is_some() {
            break;
        }
    }
    let assignment = winner.expect("the maximum is attained");
    Ok(finish(
        eval,
        assignment,
        visited,
        vec![TracePoint { iteration: visited, best }],
        Optimality::ProvenOptimal,
    ))
}
