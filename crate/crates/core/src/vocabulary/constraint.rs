use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Gesture, Modality, RelationKind, TargetClass, VocabularySpec};

/// `slot = value`, where the slot is a dimension name or one of the
/// [`RESERVED_SLOTS`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Predicate {
    pub dimension: String,
    pub value: String,
}

impl Predicate {
    pub fn new(dimension: impl Into<String>, value: impl Into<String>) -> Self {
        Predicate {
            dimension: dimension.into(),
            value: value.into(),
        }
    }

    pub(crate) fn check(&self, spec: &VocabularySpec) -> Result<(), String> {
        let v = self.value.as_str();
        let ok = match self.dimension.as_str() {
            "modality" => Modality::parse(v).is_some(),
            "points" | "users" => v.parse::<u32>().is_ok_and(|n| n > 0),
            "hands" => matches!(v, "1" | "2"),
            "object-relation" => RelationKind::parse(v).is_some(),
            "target" => v == "none" || TargetClass::parse(v).is_some(),
            name => {
                let dim = spec
                    .dimension(name)
                    .ok_or_else(|| format!("unknown dimension `{name}`"))?;
                dim.value_index(v).is_some()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(format!("`{v}` is not a value of `{}`", self.dimension))
        }
    }

    /// The gesture's value in this predicate's slot, or `None` when the slot
    /// does not apply to the gesture.
    pub(crate) fn slot_value<'g>(&self, gesture: &'g Gesture, spec: &VocabularySpec) -> Option<Cow<'g, str>> {
        let m = &gesture.multiplicity;
        Some(match self.dimension.as_str() {
            "modality" => Cow::Borrowed(gesture.modality.as_str()),
            "points" => Cow::Owned(m.points.to_string()),
            "hands" => Cow::Owned(m.hands.to_string()),
            "users" => Cow::Owned(m.users.to_string()),
            "object-relation" => Cow::Borrowed(gesture.object_relation.kind.as_str()),
            "target" => Cow::Borrowed(gesture.object_relation.target.map_or("none", |t| t.as_str())),
            name => {
                let applies = spec.dimension(name)?.applies_to(gesture.modality);
                if !applies {
                    return None;
                }
                Cow::Borrowed(gesture.value(name)?)
            }
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.dimension, self.value)
    }
}

/// Implication `if condition then consequence`. It is only checked for
/// gestures to which both slots apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraint {
    #[serde(rename = "if")]
    pub condition: Predicate,
    #[serde(rename = "then")]
    pub consequence: Predicate,
}

impl Constraint {
    pub fn implies(condition: Predicate, consequence: Predicate) -> Self {
        Constraint {
            condition,
            consequence,
        }
    }

    pub fn violated_by(&self, gesture: &Gesture, spec: &VocabularySpec) -> bool {
        match (
            self.condition.slot_value(gesture, spec),
            self.consequence.slot_value(gesture, spec),
        ) {
            (Some(a), Some(b)) => a == self.condition.value && b != self.consequence.value,
            _ => false,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.condition, self.consequence)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    MissingDimension(String),
    ExtraneousDimension(String),
    UnknownValue { dimension: String, value: String },
    Constraint { index: usize, constraint: String },
    Multiplicity(String),
    Relation(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingDimension(d) => write!(f, "missing dimension `{d}`"),
            Violation::ExtraneousDimension(d) => write!(f, "dimension `{d}` does not apply"),
            Violation::UnknownValue { dimension, value } => {
                write!(f, "`{value}` is not a value of `{dimension}`")
            }
            Violation::Constraint { index, constraint } => {
                write!(f, "violates constraint {index} ({constraint})")
            }
            Violation::Multiplicity(m) => f.write_str(m),
            Violation::Relation(m) => f.write_str(m),
        }
    }
}
