//! Task-to-gesture mapping for graph exploration and editing.
//!
//! - [`catalog`]: basic interaction tasks and their mode tags.
//! - [`vocabulary`]: gesture vocabularies enumerated from degrees of freedom.
//! - [`criteria`]: design-criteria scores and the weighted quality q̂.
//! - [`optimizer`]: exhaustive, assignment, local-search and annealing solvers.

pub mod catalog;
pub mod criteria;
pub mod exec;
pub mod fixtures;
pub mod mapping;
pub mod optimizer;
pub mod vocabulary;

pub use catalog::{Task, TaskCatalog};
pub use criteria::{Criterion, CriterionContext, Evaluator, QualityReport, WeightVector};
pub use exec::Execution;
pub use mapping::{verify_mapping, Mapping, MappingViolation};
pub use optimizer::{optimize, OptimizationResult, SolverConfig};
pub use vocabulary::{Gesture, Vocabulary, VocabularySpec};
