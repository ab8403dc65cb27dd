//! Search for injective task-to-gesture mappings that maximize q̂.
//!
//! All solvers work on gesture-index vectors in catalog order and break
//! ties (scores within [`SCORE_TOLERANCE`]) towards the lexicographically
//! smallest vector.

mod assignment;
mod brute_force;
mod local;

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{CriteriaError, Evaluator, QualityReport};
use crate::exec::Execution;
use crate::mapping::Mapping;

pub use assignment::{assignment_exact, solve_assignment};
pub use brute_force::{brute_force_optimal, injective_count};
pub use local::{anneal, apply_move, local_search, moves, Move};

pub const SCORE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum OptimizerError {
    #[error("infeasible: {tasks} tasks but only {gestures} gestures")]
    Infeasible { tasks: usize, gestures: usize },
    #[error("search space has {count} injective mappings, above the guard of {guard}")]
    GuardExceeded { count: BigUint, guard: u64 },
    #[error("criterion `{0}` is not separable; the assignment solver needs separable criteria only")]
    NonSeparable(String),
    #[error("invalid solver config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    BruteForce,
    AssignmentExact,
    #[default]
    LocalSearch,
    Anneal,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute-force",
            Algorithm::AssignmentExact => "assignment-exact",
            Algorithm::LocalSearch => "local-search",
            Algorithm::Anneal => "anneal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Ascent steps per start (local search) or proposals per start (anneal).
    pub max_iterations: u64,
    /// Extra starts beyond the first.
    pub restarts: u32,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub brute_force_guard: u64,
    /// Fan brute-force branches and restarts out to worker threads.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::default(),
            seed: 0,
            max_iterations: 10_000,
            restarts: 0,
            initial_temperature: 0.05,
            cooling_rate: 0.999,
            brute_force_guard: 10_000_000,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), OptimizerError> {
        if self.max_iterations < 1 {
            return Err(OptimizerError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(OptimizerError::InvalidConfig(format!(
                "cooling_rate {} is outside (0, 1)",
                self.cooling_rate
            )));
        }
        if !(self.initial_temperature.is_finite() && self.initial_temperature >= 0.0) {
            return Err(OptimizerError::InvalidConfig(format!(
                "initial_temperature {} must be finite and >= 0",
                self.initial_temperature
            )));
        }
        Ok(())
    }

    pub fn execution(&self) -> Execution {
        if self.parallel {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    ProvenOptimal,
    Heuristic,
}

impl Optimality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Optimality::ProvenOptimal => "proven-optimal",
            Optimality::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub mapping: Mapping,
    /// Gesture indices in catalog order.
    pub assignment: Vec<usize>,
    pub report: QualityReport,
    pub iterations_used: u64,
    pub trace: Vec<TracePoint>,
    pub optimality: Optimality,
}

/// Runs the configured algorithm.
pub fn optimize(eval: &Evaluator, config: &SolverConfig) -> Result<OptimizationResult, OptimizerError> {
    match config.algorithm {
        Algorithm::BruteForce => brute_force_optimal(eval, config),
        Algorithm::AssignmentExact => assignment_exact(eval, config),
        Algorithm::LocalSearch => local_search(eval, config),
        Algorithm::Anneal => anneal(eval, config),
    }
}

pub(crate) fn check_feasible(eval: &Evaluator) -> Result<(), OptimizerError> {
    let (tasks, gestures) = (eval.task_count(), eval.gesture_count());
    if gestures < tasks {
        return Err(OptimizerError::Infeasible { tasks, gestures });
    }
    Ok(())
}

/// True when `(q, a)` beats `(best_q, best)`: higher score beyond the
/// tolerance, or a tie with a lexicographically smaller vector.
pub(crate) fn improves(q: f64, a: &[usize], best_q: f64, best: &[usize]) -> bool {
    if q > best_q + SCORE_TOLERANCE {
        return true;
    }
    q >= best_q - SCORE_TOLERANCE && a.cmp(best) == Ordering::Less
}

pub(crate) fn finish(
    eval: &Evaluator,
    assignment: Vec<usize>,
    iterations_used: u64,
    trace: Vec<TracePoint>,
    optimality: Optimality,
) -> OptimizationResult {
    OptimizationResult {
        mapping: Mapping::from_assignment(eval.context().catalog(), &assignment),
        report: eval.report(&assignment),
        assignment,
        iterations_used,
        trace,
        optimality,
    }
}
