//! Task-to-gesture mappings and their validity checks.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::TaskCatalog;
use crate::vocabulary::Vocabulary;

/// Task id to gesture index (into a [`Vocabulary`]). Valid mappings are
/// injective and total over their catalog; see [`verify_mapping`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mapping {
    pairs: IndexMap<String, usize>,
}

impl Mapping {
    pub fn new() -> Self {
        Self::default()
    }

    /// Maps catalog task `i` to `assignment[i]`.
    pub fn from_assignment(catalog: &TaskCatalog, assignment: &[usize]) -> Self {
        Mapping {
            pairs: catalog
                .iter()
                .zip(assignment)
                .map(|(t, &g)| (t.id.clone(), g))
                .collect(),
        }
    }

    pub fn insert(&mut self, task: impl Into<String>, gesture: usize) -> Option<usize> {
        self.pairs.insert(task.into(), gesture)
    }

    pub fn get(&self, task: &str) -> Option<usize> {
        self.pairs.get(task).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.pairs.iter().map(|(t, &g)| (t.as_str(), g))
    }

    /// Gesture indices in catalog order, or the violations that prevent it.
    pub fn assignment(&self, catalog: &TaskCatalog, vocab: &Vocabulary) -> Result<Vec<usize>, Vec<MappingViolation>> {
        let violations = verify_mapping(self, catalog, vocab);
        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(catalog.iter().map(|t| self.pairs[&t.id]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MappingViolation {
    /// Several tasks share one gesture.
    NotInjective { gesture: usize, tasks: Vec<String> },
    MissingTask { task: String },
    UnknownTask { task: String },
    UnknownGesture { task: String, gesture: usize },
}

impl fmt::Display for MappingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MappingViolation::NotInjective { gesture, tasks } => {
                write!(f, "gesture {gesture} is assigned to several tasks: {}", tasks.join(", "))
            }
            MappingViolation::MissingTask { task } => write!(f, "task `{task}` is not mapped"),
            MappingViolation::UnknownTask { task } => {
                write!(f, "task `{task}` is not in the catalog")
            }
            MappingViolation::UnknownGesture { task, gesture } => {
                write!(f, "task `{task}` maps to gesture {gesture}, which is not in the vocabulary")
            }
        }
    }
}

/// Checks injectivity, totality over `tasks` and that every referenced
/// gesture exists. Returns an empty list for a valid mapping.
pub fn verify_mapping(m: &Mapping, tasks: &TaskCatalog, vocab: &Vocabulary) -> Vec<MappingViolation> {
    let mut violations = Vec::new();
    for t in tasks {
        if m.get(&t.id).is_none() {
            violations.push(MappingViolation::MissingTask { task: t.id.clone() });
        }
    }
    let known: HashSet<&str> = tasks.iter().map(|t| t.id.as_str()).collect();
    let mut users: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (task, gesture) in m.iter() {
        if !known.contains(task) {
            violations.push(MappingViolation::UnknownTask { task: task.to_string() });
        }
        if gesture >= vocab.len() {
            violations.push(MappingViolation::UnknownGesture {
                task: task.to_string(),
                gesture,
            });
        }
        users.entry(gesture).or_default().push(task.to_string());
    }
    for (gesture, tasks) in users {
        if tasks.len() > 1 {
            violations.push(MappingViolation::NotInjective { gesture, tasks });
        }
    }
    violations
}

/// One line of a mapping file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingEntry {
    pub task: String,
    pub gesture_fingerprint: String,
}

#[derive(Debug, Error)]
pub enum MappingFileError {
    #[error("mapping parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("task `{task}`: no gesture with fingerprint `{fingerprint}` in the vocabulary")]
    UnknownFingerprint { task: String, fingerprint: String },
    #[error("task `{0}` appears more than once")]
    DuplicateTask(String),
}

pub fn parse_mapping_entries(text: &str) -> Result<Vec<MappingEntry>, MappingFileError> {
    serde_json::from_str(text).map_err(|e| MappingFileError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Resolves fingerprints against `vocab`.
pub fn mapping_from_entries(entries: &[MappingEntry], vocab: &Vocabulary) -> Result<Mapping, MappingFileError> {
    let mut m = Mapping::new();
    for e in entries {
        let g = vocab
            .index_of_fingerprint(&e.gesture_fingerprint)
            .ok_or_else(|| MappingFileError::UnknownFingerprint {
                task: e.task.clone(),
                fingerprint: e.gesture_fingerprint.clone(),
            })?;
        if m.insert(e.task.clone(), g).is_some() {
            return Err(MappingFileError::DuplicateTask(e.task.clone()));
        }
    }
    Ok(m)
}

/// Mapping as file entries. Gesture indices must exist in `vocab`.
pub fn mapping_entries(m: &Mapping, vocab: &Vocabulary) -> Vec<MappingEntry> {
    m.iter()
        .map(|(task, g)| MappingEntry {
            task: task.to_string(),
            gesture_fingerprint: vocab.gestures()[g].fingerprint(),
        })
        .collect()
}
