//! Design-criteria scoring of task-to-gesture mappings.
//!
//! Each [`Criterion`] scores a mapping in `[0, 1]`. The overall quality is
//! the weighted sum of the scores divided by the number of active criteria
//! (or, optionally, by the weight sum):
//!
//! ```text
//! q̂ = (α₁·q₁ + … + αₙ·qₙ) / n
//! ```
//!
//! Criteria flagged [separable](Criterion::separable) score a mapping as a
//! weighted mean of independent per-(task, gesture) terms, which lets the
//! optimizer solve them as an assignment problem.

mod compact;
mod evaluator;

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::sync::{Arc, OnceLock};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::TaskCatalog;
use crate::exec::Execution;
use crate::mapping::{Mapping, MappingViolation};
use crate::vocabulary::Vocabulary;

pub(crate) use compact::CompactGestures;
pub use evaluator::{BenefitMatrix, Evaluator, SeparableTerm};

/// Familiarity score used when the table has no entry for a pair.
pub const DEFAULT_FAMILIARITY: f64 = 0.5;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("no active criteria")]
    EmptyCriteria,
    #[error("criterion `{0}` is listed more than once")]
    DuplicateCriterion(String),
    #[error("no weight for active criterion `{0}`")]
    MissingWeight(String),
    #[error("weight given for inactive criterion `{0}`")]
    UnusedWeight(String),
    #[error("weight {value} for `{criterion}` is outside [0, 1]")]
    InvalidWeight { criterion: String, value: f64 },
    #[error("criterion `{0}` has no scoring function")]
    MissingContext(String),
    #[error("invalid mapping: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidMapping(Vec<MappingViolation>),
    #[error("familiarity score {score} for task `{task}` is outside [0, 1]")]
    InvalidFamiliarity { task: String, score: f64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionKind {
    Predictability,
    Consistency,
    Familiarity,
    Generalizability,
    Viscosity,
    Recoverability,
    Directness,
    Continuity,
    Custom,
}

impl CriterionKind {
    pub const BUILTIN: [CriterionKind; 8] = [
        CriterionKind::Predictability,
        CriterionKind::Consistency,
        CriterionKind::Familiarity,
        CriterionKind::Generalizability,
        CriterionKind::Viscosity,
        CriterionKind::Recoverability,
        CriterionKind::Directness,
        CriterionKind::Continuity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionKind::Predictability => "predictability",
            CriterionKind::Consistency => "consistency",
            CriterionKind::Familiarity => "familiarity",
            CriterionKind::Generalizability => "generalizability",
            CriterionKind::Viscosity => "viscosity",
            CriterionKind::Recoverability => "recoverability",
            CriterionKind::Directness => "directness",
            CriterionKind::Continuity => "continuity",
            CriterionKind::Custom => "custom",
        }
    }

    pub fn separable(&self) -> bool {
        matches!(
            self,
            CriterionKind::Familiarity
                | CriterionKind::Directness
                | CriterionKind::Continuity
                | CriterionKind::Recoverability
                | CriterionKind::Viscosity
        )
    }
}

/// Scoring function of a custom criterion. Must be free of side effects;
/// results are clamped to `[0, 1]` and NaN scores as 0.
pub type CustomScore = Arc<dyn Fn(&Mapping, &CriterionContext) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Criterion {
    kind: CriterionKind,
    name: String,
    custom: Option<CustomScore>,
}

impl fmt::Debug for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Criterion")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .field("bound", &self.custom.is_some())
            .finish()
    }
}

impl PartialEq for Criterion {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.name == other.name
    }
}

impl Criterion {
    pub fn builtin(kind: CriterionKind) -> Self {
        assert!(kind != CriterionKind::Custom, "custom criteria need a name and a function");
        Criterion {
            kind,
            name: kind.as_str().to_string(),
            custom: None,
        }
    }

    pub fn all_builtin() -> Vec<Criterion> {
        CriterionKind::BUILTIN.into_iter().map(Criterion::builtin).collect()
    }

    pub fn custom(name: impl Into<String>, score: CustomScore) -> Self {
        Criterion {
            kind: CriterionKind::Custom,
            name: name.into(),
            custom: Some(score),
        }
    }

    /// Built-in criterion by name; any other name is a custom criterion
    /// without a scoring function.
    pub fn named(name: &str) -> Self {
        CriterionKind::BUILTIN
            .into_iter()
            .find(|k| k.as_str() == name)
            .map(Criterion::builtin)
            .unwrap_or_else(|| Criterion {
                kind: CriterionKind::Custom,
                name: name.to_string(),
                custom: None,
            })
    }

    pub fn kind(&self) -> CriterionKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn separable(&self) -> bool {
        self.kind.separable()
    }

    pub(crate) fn custom_fn(&self) -> Option<&CustomScore> {
        self.custom.as_ref()
    }
}

/// Criterion name to weight α in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightVector {
    weights: IndexMap<String, f64>,
}

impl WeightVector {
    pub fn new<S: Into<String>>(weights: impl IntoIterator<Item = (S, f64)>) -> Result<Self, CriteriaError> {
        let w = WeightVector {
            weights: weights.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        };
        w.check()?;
        Ok(w)
    }

    pub fn uniform(active: &[Criterion], alpha: f64) -> Result<Self, CriteriaError> {
        Self::new(active.iter().map(|c| (c.name().to_string(), alpha)))
    }

    fn check(&self) -> Result<(), CriteriaError> {
        for (criterion, &value) in &self.weights {
            if !(0.0..=1.0).contains(&value) {
                return Err(CriteriaError::InvalidWeight {
                    criterion: criterion.clone(),
                    value,
                });
            }
        }
        Ok(())
    }

    pub fn get(&self, criterion: &str) -> Option<f64> {
        self.weights.get(criterion).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weights of `active` in order; fails unless the domains are equal.
    pub fn aligned(&self, active: &[Criterion]) -> Result<Vec<f64>, CriteriaError> {
        let alphas = active
            .iter()
            .map(|c| self.get(c.name()).ok_or_else(|| CriteriaError::MissingWeight(c.name().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(extra) = self.weights.keys().find(|k| !active.iter().any(|c| c.name() == k.as_str())) {
            return Err(CriteriaError::UnusedWeight(extra.clone()));
        }
        Ok(alphas)
    }

    /// Keeps only the weights of `active`.
    pub fn restricted(&self, active: &[Criterion]) -> WeightVector {
        WeightVector {
            weights: self
                .weights
                .iter()
                .filter(|(k, _)| active.iter().any(|c| c.name() == k.as_str()))
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CriteriaError> {
        let w: WeightVector = serde_json::from_str(text).map_err(parse_error)?;
        w.check()?;
        Ok(w)
    }
}

fn parse_error(e: serde_json::Error) -> CriteriaError {
    CriteriaError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// One row of a familiarity table file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamiliarityEntry {
    pub task: String,
    pub gesture_fingerprint: String,
    pub score: f64,
}

pub fn load_familiarity<R: Read>(mut source: R) -> Result<Vec<FamiliarityEntry>, CriteriaError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    serde_json::from_str(&text).map_err(parse_error)
}

/// Everything the built-in criteria read besides the mapping itself.
#[derive(Debug)]
pub struct CriterionContext {
    catalog: TaskCatalog,
    vocabulary: Vocabulary,
    familiarity: HashMap<(String, String), f64>,
    execution: Execution,
    compact: OnceLock<CompactGestures>,
    max_distance: OnceLock<f64>,
}

impl CriterionContext {
    pub fn new(catalog: TaskCatalog, vocabulary: Vocabulary) -> Self {
        CriterionContext {
            catalog,
            vocabulary,
            familiarity: HashMap::new(),
            execution: Execution::default(),
            compact: OnceLock::new(),
            max_distance: OnceLock::new(),
        }
    }

    pub fn with_familiarity(mut self, entries: impl IntoIterator<Item = FamiliarityEntry>) -> Result<Self, CriteriaError> {
        for e in entries {
            if !(0.0..=1.0).contains(&e.score) {
                return Err(CriteriaError::InvalidFamiliarity {
                    task: e.task,
                    score: e.score,
                });
            }
            self.familiarity.insert((e.task, e.gesture_fingerprint), e.score);
        }
        Ok(self)
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn catalog(&self) -> &TaskCatalog {
        &self.catalog
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    /// Familiarity of a (task, gesture) pair, [`DEFAULT_FAMILIARITY`] when absent.
    pub fn familiarity(&self, task: &str, fingerprint: &str) -> f64 {
        self.familiarity
            .get(&(task.to_string(), fingerprint.to_string()))
            .copied()
            .unwrap_or(DEFAULT_FAMILIARITY)
    }

    pub(crate) fn familiarity_entries(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.familiarity
            .iter()
            .map(|((t, g), &s)| (t.as_str(), g.as_str(), s))
    }

    pub(crate) fn compact(&self) -> &CompactGestures {
        self.compact
            .get_or_init(|| CompactGestures::new(&self.vocabulary))
    }

    /// Largest gesture distance between two vocabulary members; 0 for
    /// vocabularies with fewer than two gestures.
    pub fn max_pairwise_distance(&self) -> f64 {
        *self
            .max_distance
            .get_or_init(|| self.compact().max_pairwise_distance(self.execution))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Divide by the number of active criteria.
    #[default]
    Count,
    /// Divide by the sum of the weights (0 when all weights are 0).
    WeightSum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionScore {
    pub criterion: String,
    pub weight: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub per_criterion: Vec<CriterionScore>,
    pub aggregate: f64,
    pub n: usize,
    pub normalization: Normalization,
}

impl QualityReport {
    pub fn score(&self, criterion: &str) -> Option<f64> {
        self.per_criterion
            .iter()
            .find(|c| c.criterion == criterion)
            .map(|c| c.score)
    }

    pub fn weights(&self) -> WeightVector {
        WeightVector {
            weights: self
                .per_criterion
                .iter()
                .map(|c| (c.criterion.clone(), c.weight))
                .collect(),
        }
    }
}

/// Weighted sum in list order, normalized per `normalization`.
pub fn aggregate(scores: &[f64], alphas: &[f64], normalization: Normalization) -> f64 {
    let sum = scores
        .iter()
        .zip(alphas)
        .fold(0.0, |acc, (q, a)| acc + a * q);
    match normalization {
        Normalization::Count => sum / scores.len() as f64,
        Normalization::WeightSum => {
            let total: f64 = alphas.iter().sum();
            if total == 0.0 {
                0.0
            } else {
                sum / total
            }
        }
    }
}

pub fn score_criterion(m: &Mapping, c: &Criterion, ctx: &CriterionContext) -> Result<f64, CriteriaError> {
    let assignment = m
        .assignment(ctx.catalog(), ctx.vocabulary())
        .map_err(CriteriaError::InvalidMapping)?;
    let active = [c.clone()];
    let weights = WeightVector::uniform(&active, 1.0)?;
    let eval = Evaluator::new(ctx, &active, &weights, Normalization::Count)?;
    Ok(eval.criterion_score(0, &assignment))
}

pub fn overall_quality(
    m: &Mapping,
    w: &WeightVector,
    ctx: &CriterionContext,
    active: &[Criterion],
) -> Result<QualityReport, CriteriaError> {
    overall_quality_with(m, w, ctx, active, Normalization::Count)
}

pub fn overall_quality_with(
    m: &Mapping,
    w: &WeightVector,
    ctx: &CriterionContext,
    active: &[Criterion],
    normalization: Normalization,
) -> Result<QualityReport, CriteriaError> {
    let eval = Evaluator::new(ctx, active, w, normalization)?;
    let assignment = m
        .assignment(ctx.catalog(), ctx.vocabulary())
        .map_err(CriteriaError::InvalidMapping)?;
    Ok(eval.report(&assignment))
}
