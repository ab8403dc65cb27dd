use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_feasible, finish, improves, OptimizationResult, Optimality, OptimizerError, SolverConfig, TracePoint, SCORE_TOLERANCE};
use crate::criteria::Evaluator;

/// Neighborhood move on a gesture-index vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    /// Give `task` the currently unused `gesture`.
    Reassign { task: usize, gesture: usize },
    /// Exchange the gestures of two tasks.
    Swap { a: usize, b: usize },
}

/// Applies `mv` and returns the move that undoes it.
pub fn apply_move(assignment: &mut [usize], mv: Move) -> Move {
    match mv {
        Move::Reassign { task, gesture } => {
            let old = std::mem::replace(&mut assignment[task], gesture);
            Move::Reassign { task, gesture: old }
        }
        Move::Swap { a, b } => {
            assignment.swap(a, b);
            mv
        }
    }
}

/// The full neighborhood in scan order: reassignments (task ascending, then
/// unused gesture ascending), then swaps of task pairs `a < b`.
pub fn moves(assignment: &[usize], gestures: usize) -> Vec<Move> {
    let mut used = vec![false; gestures];
    for &g in assignment {
        used[g] = true;
    }
    let k = assignment.len();
    let mut out = Vec::new();
    for task in 0..k {
        for gesture in (0..gestures).filter(|&g| !used[g]) {
            out.push(Move::Reassign { task, gesture });
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            out.push(Move::Swap { a, b });
        }
    }
    out
}

fn start_rng(seed: u64, start: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(start));
    rng
}

fn random_assignment(rng: &mut ChaCha8Rng, k: usize, l: usize) -> Vec<usize> {
    sample(rng, l, k).into_vec()
}

struct Run {
    best: Vec<usize>,
    best_q: f64,
    iterations: u64,
    trace: Vec<TracePoint>,
}

/// Picks the best run and stitches the per-run traces onto one running
/// iteration counter and running best.
fn merge(eval: &Evaluator, runs: Vec<Run>) -> OptimizationResult {
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut trace = Vec::new();
    let mut offset = 0;
    for run in runs {
        let prior = best.as_ref().map_or(f64::NEG_INFINITY, |b| b.0);
        for p in &run.trace {
            trace.push(TracePoint {
                iteration: offset + p.iteration,
                best: p.best.max(prior),
            });
        }
        offset += run.iterations;
        let better = match &best {
            None => true,
            Some((q, a)) => improves(run.best_q, &run.best, *q, a),
        };
        if better {
            best = Some((run.best_q, run.best));
        }
    }
    let (_, assignment) = best.expect("at least one start");
    finish(eval, assignment, offset, trace, Optimality::Heuristic)
}

fn climb(eval: &Evaluator, config: &SolverConfig, start: u32) -> Run {
    let (k, l) = (eval.task_count(), eval.gesture_count());
    let mut rng = start_rng(config.seed, start);
    let mut current = random_assignment(&mut rng, k, l);
    let mut q = eval.quality(&current);
    let mut trace = vec![TracePoint { iteration: 0, best: q }];
    let mut iterations = 0;
    while iterations < config.max_iterations {
        let mut best_move = None;
        let mut best_q = q;
        for mv in moves(&current, l) {
            let undo = apply_move(&mut current, mv);
            let candidate = eval.quality(&current);
            apply_move(&mut current, undo);
            if candidate > best_q + SCORE_TOLERANCE {
                best_q = candidate;
                best_move = Some(mv);
            }
        }
        let Some(mv) = best_move else { break };
        apply_move(&mut current, mv);
        q = best_q;
        iterations += 1;
        trace.push(TracePoint { iteration: iterations, best: q });
    }
    Run {
        best: current,
        best_q: q,
        iterations,
        trace,
    }
}

/// Steepest-ascent hill climbing from `restarts + 1` seeded random starts.
///
/// Each step scans the whole neighborhood (see [`moves`]) and takes the
/// first move with the largest improvement; a start ends at a local
/// optimum or after `max_iterations` steps.
pub fn local_search(eval: &Evaluator, config: &SolverConfig) -> Result<OptimizationResult, OptimizerError> {
    config.validate()?;
    check_feasible(eval)?;
    let runs = config
        .execution()
        .map_range(config.restarts as usize + 1, |s| climb(eval, config, s as u32));
    Ok(merge(eval, runs))
}

fn anneal_run(eval: &Evaluator, config: &SolverConfig, start: u32) -> Run {
    let (k, l) = (eval.task_count(), eval.gesture_count());
    let mut rng = start_rng(config.seed, start);
    let mut current = random_assignment(&mut rng, k, l);
    let mut owner: Vec<Option<usize>> = vec![None; l];
    for (t, &g) in current.iter().enumerate() {
        owner[g] = Some(t);
    }
    let mut q = eval.quality(&current);
    let mut best = current.clone();
    let mut best_q = q;
    let mut trace = vec![TracePoint { iteration: 0, best: q }];
    let mut temperature = config.initial_temperature;
    let mut iterations = 0;
    if k == 0 || l < 2 {
        return Run { best, best_q, iterations, trace };
    }
    while iterations < config.max_iterations {
        iterations += 1;
        let task = rng.gen_range(0..k);
        let mut gesture = rng.gen_range(0..l - 1);
        if gesture >= current[task] {
            gesture += 1;
        }
        let mv = match owner[gesture] {
            None => Move::Reassign { task, gesture },
            Some(other) => Move::Swap { a: task.min(other), b: task.max(other) },
        };
        let undo = apply_move(&mut current, mv);
        let candidate = eval.quality(&current);
        let delta = candidate - q;
        let accept = delta >= 0.0 || (temperature > 0.0 && rng.gen::<f64>() < (delta / temperature).exp());
        if accept {
            q = candidate;
            match mv {
                Move::Reassign { task, gesture } => {
                    if let Move::Reassign { gesture: old, .. } = undo {
                        owner[old] = None;
                    }
                    owner[gesture] = Some(task);
                }
                Move::Swap { a, b } => {
                    owner[current[a]] = Some(a);
                    owner[current[b]] = Some(b);
                }
            }
            if improves(q, &current, best_q, &best) {
                best.clone_from(&current);
                best_q = q;
                trace.push(TracePoint { iteration: iterations, best: best_q });
            }
        } else {
            apply_move(&mut current, undo);
        }
        temperature *= config.cooling_rate;
    }
    if trace.last().is_some_and(|p| p.iteration != iterations) {
        trace.push(TracePoint { iteration: iterations, best: best_q });
    }
    Run { best, best_q, iterations, trace }
}

/// Simulated annealing from `restarts + 1` seeded random starts.
///
/// Each proposal picks a random task and a random other gesture: a
/// reassignment when that gesture is unused, otherwise a swap with its
/// owner. Worse proposals are accepted with probability `exp(Δ/T)`;
/// the temperature is multiplied by `cooling_rate` after every proposal.
/// With temperature 0 only non-worsening moves are accepted.
pub fn anneal(eval: &Evaluator, config: &SolverConfig) -> Result<OptimizationResult, OptimizerError> {
    config.validate()?;
    check_feasible(eval)?;
    let runs = config
        .execution()
        .map_range(config.restarts as usize + 1, |s| anneal_run(eval, config, s as u32));
    Ok(merge(eval, runs))
}
