use std::collections::HashMap;

use crate::catalog::{task_similarity, ModeClass};
use crate::mapping::Mapping;
use crate::vocabulary::{gesture_effort, gesture_inverse, RelationKind};

use super::{
    aggregate, CriteriaError, Criterion, CriterionContext, CriterionKind, CriterionScore,
    Normalization, QualityReport, WeightVector, DEFAULT_FAMILIARITY,
};

/// Two score differences closer than this count as a tie in rank agreement.
const RANK_TIE: f64 = 1e-12;

/// Per-(task, gesture) contribution of a separable criterion: the score is
/// `Σ weight·value / Σ weight` over tasks, or 1 when every weight is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableTerm {
    pub weight: f64,
    pub value: f64,
}

/// Benefit of each (task, gesture) pair for a fully separable criterion set:
/// `q̂ = offset + Σ_t values[t][m(t)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenefitMatrix {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub offset: f64,
}

impl BenefitMatrix {
    pub fn get(&self, task: usize, gesture: usize) -> f64 {
        self.values[task * self.cols + gesture]
    }
}

/// Scores gesture-index assignments (catalog order) against a fixed
/// criterion list, with per-gesture attributes cached up front.
pub struct Evaluator<'c> {
    ctx: &'c CriterionContext,
    active: Vec<Criterion>,
    alphas: Vec<f64>,
    normalization: Normalization,
    effort: Vec<f64>,
    mode: Vec<ModeClass>,
    has_inverse: Vec<bool>,
    related: Vec<bool>,
    shape: Vec<u32>,
    familiarity: HashMap<(usize, usize), f64>,
    task_weights: Vec<Vec<f64>>,
    weight_sums: Vec<f64>,
    task_sim: Vec<f64>,
    max_distance: f64,
}

impl<'c> Evaluator<'c> {
    pub fn new(
        ctx: &'c CriterionContext,
        active: &[Criterion],
        weights: &WeightVector,
        normalization: Normalization,
    ) -> Result<Self, CriteriaError> {
        if active.is_empty() {
            return Err(CriteriaError::EmptyCriteria);
        }
        for (i, c) in active.iter().enumerate() {
            if active[..i].iter().any(|d| d.name() == c.name()) {
                return Err(CriteriaError::DuplicateCriterion(c.name().to_string()));
            }
            if c.kind() == CriterionKind::Custom && c.custom_fn().is_none() {
                return Err(CriteriaError::MissingContext(c.name().to_string()));
            }
        }
        let alphas = weights.aligned(active)?;
        let uses = |kind| active.iter().any(|c| c.kind() == kind);
        let vocab = ctx.vocabulary();
        let catalog = ctx.catalog();
        let per_gesture = |flag: bool| if flag { vocab.len() } else { 0 };

        let effort = vocab.iter().take(per_gesture(uses(CriterionKind::Viscosity))).map(gesture_effort).collect();
        let mode = vocab.iter().take(per_gesture(uses(CriterionKind::Continuity))).map(|g| g.mode_class()).collect();
        let has_inverse = vocab
            .iter()
            .take(per_gesture(uses(CriterionKind::Recoverability)))
            .map(|g| gesture_inverse(g, vocab).is_some())
            .collect();
        let related = vocab
            .iter()
            .take(per_gesture(uses(CriterionKind::Directness)))
            .map(|g| g.object_relation.kind != RelationKind::None)
            .collect();
        let mut shapes: HashMap<[Option<&str>; 3], u32> = HashMap::new();
        let shape = vocab
            .iter()
            .take(per_gesture(uses(CriterionKind::Generalizability)))
            .map(|g| {
                let key = [g.value("continuity"), g.value("nature-of-motion"), g.value("linearity")];
                let next = shapes.len() as u32;
                *shapes.entry(key).or_insert(next)
            })
            .collect();

        let mut familiarity = HashMap::new();
        if uses(CriterionKind::Familiarity) {
            for (task, fingerprint, score) in ctx.familiarity_entries() {
                if let (Some(t), Some(g)) = (catalog.position(task), vocab.index_of_fingerprint(fingerprint)) {
                    familiarity.insert((t, g), score);
                }
            }
        }

        let task_weights: Vec<Vec<f64>> = active
            .iter()
            .map(|c| {
                catalog
                    .iter()
                    .map(|t| match c.kind() {
                        CriterionKind::Viscosity => t.frequency_weight,
                        CriterionKind::Recoverability => f64::from(u8::from(t.mutating)),
                        CriterionKind::Directness => {
                            f64::from(u8::from(t.object_scope.iter().any(|o| o.is_data_object())))
                        }
                        _ => 1.0,
                    })
                    .collect()
            })
            .collect();
        let weight_sums = task_weights.iter().map(|w| w.iter().sum()).collect();

        let k = catalog.len();
        let task_sim = if uses(CriterionKind::Consistency) {
            let tasks = catalog.tasks();
            (0..k * k).map(|p| task_similarity(&tasks[p / k], &tasks[p % k])).collect()
        } else {
            Vec::new()
        };
        let max_distance = if uses(CriterionKind::Predictability) {
            ctx.max_pairwise_distance()
        } else {
            0.0
        };

        Ok(Evaluator {
            ctx,
            active: active.to_vec(),
            alphas,
            normalization,
            effort,
            mode,
            has_inverse,
            related,
            shape,
            familiarity,
            task_weights,
            weight_sums,
            task_sim,
            max_distance,
        })
    }

    pub fn context(&self) -> &CriterionContext {
        self.ctx
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.active
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn task_count(&self) -> usize {
        self.ctx.catalog().len()
    }

    pub fn gesture_count(&self) -> usize {
        self.ctx.vocabulary().len()
    }

    /// Per-pair term of criterion `index`; `None` for non-separable criteria.
    pub fn separable_term(&self, index: usize, task: usize, gesture: usize) -> Option<SeparableTerm> {
        let c = &self.active[index];
        let value = match c.kind() {
            CriterionKind::Familiarity => self
                .familiarity
                .get(&(task, gesture))
                .copied()
                .unwrap_or(DEFAULT_FAMILIARITY),
            CriterionKind::Viscosity => 1.0 - self.effort[gesture],
            CriterionKind::Recoverability => f64::from(u8::from(self.has_inverse[gesture])),
            CriterionKind::Directness => f64::from(u8::from(self.related[gesture])),
            CriterionKind::Continuity => {
                let tag = &self.ctx.catalog().tasks()[task].mode_tag;
                f64::from(u8::from(tag.accepts(self.mode[gesture])))
            }
            _ => return None,
        };
        Some(SeparableTerm {
            weight: self.task_weights[index][task],
            value,
        })
    }

    pub fn criterion_score(&self, index: usize, assignment: &[usize]) -> f64 {
        let c = &self.active[index];
        match c.kind() {
            CriterionKind::Predictability => self.predictability(assignment),
            CriterionKind::Consistency => self.consistency(assignment),
            CriterionKind::Generalizability => self.generalizability(assignment),
            CriterionKind::Custom => {
                let f = c.custom_fn().expect("checked at construction");
                let m = Mapping::from_assignment(self.ctx.catalog(), assignment);
                let q = f(&m, self.ctx);
                if q.is_nan() {
                    0.0
                } else {
                    q.clamp(0.0, 1.0)
                }
            }
            _ => {
                let total = self.weight_sums[index];
                if total == 0.0 {
                    return 1.0;
                }
                let sum = assignment.iter().enumerate().fold(0.0, |acc, (t, &g)| {
                    let term = self.separable_term(index, t, g).expect("separable");
                    acc + term.weight * term.value
                });
                (sum / total).clamp(0.0, 1.0)
            }
        }
    }

    pub fn scores(&self, assignment: &[usize]) -> Vec<f64> {
        (0..self.active.len())
            .map(|i| self.criterion_score(i, assignment))
            .collect()
    }

    /// q̂ of the assignment.
    pub fn quality(&self, assignment: &[usize]) -> f64 {
        aggregate(&self.scores(assignment), &self.alphas, self.normalization)
    }

    pub fn report(&self, assignment: &[usize]) -> QualityReport {
        let scores = self.scores(assignment);
        QualityReport {
            aggregate: aggregate(&scores, &self.alphas, self.normalization),
            per_criterion: self
                .active
                .iter()
                .zip(&self.alphas)
                .zip(scores)
                .map(|((c, &weight), score)| CriterionScore {
                    criterion: c.name().to_string(),
                    weight,
                    score,
                })
                .collect(),
            n: self.active.len(),
            normalization: self.normalization,
        }
    }

    /// First non-separable criterion, if any.
    pub fn non_separable(&self) -> Option<&Criterion> {
        self.active.iter().find(|c| !c.separable())
    }

    /// Benefit matrix of a fully separable criterion list; `Err` names the
    /// first criterion that is not separable.
    pub fn benefit_matrix(&self) -> Result<BenefitMatrix, String> {
        if let Some(c) = self.non_separable() {
            return Err(c.name().to_string());
        }
        let rows = self.task_count();
        let cols = self.gesture_count();
        let n = self.active.len() as f64;
        let alpha_sum: f64 = self.alphas.iter().sum();
        let scale = |alpha: f64| match self.normalization {
            Normalization::Count => alpha / n,
            Normalization::WeightSum if alpha_sum == 0.0 => 0.0,
            Normalization::WeightSum => alpha / alpha_sum,
        };
        let mut values = vec![0.0; rows * cols];
        let mut offset = 0.0;
        for (i, &alpha) in self.alphas.iter().enumerate() {
            let s = scale(alpha);
            let total = self.weight_sums[i];
            if total == 0.0 {
                offset += s;
                continue;
            }
            for t in 0..rows {
                for g in 0..cols {
                    let term = self.separable_term(i, t, g).expect("separable");
                    values[t * cols + g] += s * term.weight * term.value / total;
                }
            }
        }
        Ok(BenefitMatrix {
            rows,
            cols,
            values,
            offset,
        })
    }

    fn predictability(&self, assignment: &[usize]) -> f64 {
        if assignment.len() < 2 || self.max_distance == 0.0 {
            return 1.0;
        }
        let compact = self.ctx.compact();
        let mut min = f64::INFINITY;
        for (i, &a) in assignment.iter().enumerate() {
            for &b in &assignment[i + 1..] {
                min = min.min(compact.distance(a, b));
            }
        }
        (min / self.max_distance).clamp(0.0, 1.0)
    }

    fn consistency(&self, assignment: &[usize]) -> f64 {
        let k = assignment.len();
        let compact = self.ctx.compact();
        let mut pairs = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for i in 0..k {
            for j in i + 1..k {
                let x = self.task_sim[i * k + j];
                let y = 1.0 - compact.distance(assignment[i], assignment[j]);
                pairs.push((x, y));
            }
        }
        let p = pairs.len();
        if p < 2 {
            return 1.0;
        }
        let sign = |d: f64| {
            if d > RANK_TIE {
                1i64
            } else if d < -RANK_TIE {
                -1
            } else {
                0
            }
        };
        let mut net = 0i64;
        for (a, &(xa, ya)) in pairs.iter().enumerate() {
            for &(xb, yb) in &pairs[a + 1..] {
                net += sign(xa - xb) * sign(ya - yb);
            }
        }
        let total = (p * (p - 1) / 2) as f64;
        let tau = net as f64 / total;
        ((tau + 1.0) / 2.0).clamp(0.0, 1.0)
    }

    fn generalizability(&self, assignment: &[usize]) -> f64 {
        if assignment.is_empty() {
            return 1.0;
        }
        let mut used: Vec<u32> = assignment.iter().map(|&g| self.shape[g]).collect();
        used.sort_unstable();
        used.dedup();
        1.0 - used.len() as f64 / assignment.len() as f64
    }
}
