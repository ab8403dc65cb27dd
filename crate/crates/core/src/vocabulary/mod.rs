//! Gesture vocabularies built from degrees of freedom.
//!
//! A [`VocabularySpec`] declares dimensions (each applying to one or more
//! modalities) and implication constraints between slot values. The
//! vocabulary is the constrained Cartesian product of dimension values,
//! object relations and device multiplicities, see [`enumerate_vocabulary`].

mod builtin;
mod constraint;
mod enumerate;
mod io;
mod metrics;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::ModeClass;

pub use builtin::{builtin_spec, builtin_spec_all, default_multiplicities, default_object_relations};
pub use constraint::{Constraint, Predicate, Violation};
pub use enumerate::{enumerate_vocabulary, enumerate_vocabulary_with, product_size, Enumeration};
pub use io::{load_spec, load_spec_str, spec_to_json, SpecDocument};
pub use metrics::{gesture_distance, gesture_effort, gesture_inverse, inverted_value};

#[derive(Debug, Error)]
pub enum VocabularyError {
    #[error("spec parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid multiplicity {0}: {1}")]
    InvalidMultiplicity(DeviceMultiplicity, &'static str),
    #[error("invalid object relation: {0}")]
    InvalidRelation(String),
    #[error("duplicate gesture `{0}`")]
    DuplicateGesture(String),
    #[error("malformed gesture fingerprint `{fingerprint}`: {message}")]
    InvalidFingerprint { fingerprint: String, message: String },
    #[error("gesture `{fingerprint}` violates the spec: {violations}")]
    InvalidGesture { fingerprint: String, violations: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Modality {
    Touch,
    Pen,
    Tangible,
}

impl Modality {
    pub const ALL: [Modality; 3] = [Modality::Touch, Modality::Pen, Modality::Tangible];

    pub fn as_str(&self) -> &'static str {
        match self {
            Modality::Touch => "touch",
            Modality::Pen => "pen",
            Modality::Tangible => "tangible",
        }
    }

    pub fn parse(s: &str) -> Option<Modality> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One degree of freedom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dimension {
    pub name: String,
    pub values: Vec<String>,
    pub modalities: BTreeSet<Modality>,
}

impl Dimension {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        values: impl IntoIterator<Item = S>,
        modalities: impl IntoIterator<Item = Modality>,
    ) -> Self {
        Dimension {
            name: name.into(),
            values: values.into_iter().map(Into::into).collect(),
            modalities: modalities.into_iter().collect(),
        }
    }

    pub fn applies_to(&self, modality: Modality) -> bool {
        self.modalities.contains(&modality)
    }

    pub fn value_index(&self, value: &str) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    None,
    StartedOn,
    Crossed,
    EndedOn,
    Enclosed,
}

impl RelationKind {
    pub const ALL: [RelationKind; 5] = [
        RelationKind::None,
        RelationKind::StartedOn,
        RelationKind::Crossed,
        RelationKind::EndedOn,
        RelationKind::Enclosed,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RelationKind::None => "none",
            RelationKind::StartedOn => "started-on",
            RelationKind::Crossed => "crossed",
            RelationKind::EndedOn => "ended-on",
            RelationKind::Enclosed => "enclosed",
        }
    }

    pub fn parse(s: &str) -> Option<RelationKind> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetClass {
    Node,
    Edge,
    Label,
    ViewArea,
    TangibleProxy,
}

impl TargetClass {
    pub const ALL: [TargetClass; 5] = [
        TargetClass::Node,
        TargetClass::Edge,
        TargetClass::Label,
        TargetClass::ViewArea,
        TargetClass::TangibleProxy,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TargetClass::Node => "node",
            TargetClass::Edge => "edge",
            TargetClass::Label => "label",
            TargetClass::ViewArea => "view-area",
            TargetClass::TangibleProxy => "tangible-proxy",
        }
    }

    pub fn parse(s: &str) -> Option<TargetClass> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// The object or area a gesture refers to. `target` is absent exactly when
/// `kind` is [`RelationKind::None`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectRelation {
    pub kind: RelationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetClass>,
}

impl ObjectRelation {
    pub const NONE: ObjectRelation = ObjectRelation {
        kind: RelationKind::None,
        target: None,
    };

    pub const fn on(kind: RelationKind, target: TargetClass) -> Self {
        ObjectRelation {
            kind,
            target: Some(target),
        }
    }

    pub fn check(&self) -> Result<(), VocabularyError> {
        match (self.kind, self.target) {
            (RelationKind::None, None) => Ok(()),
            (RelationKind::None, Some(_)) => Err(VocabularyError::InvalidRelation(
                "kind `none` must not carry a target".into(),
            )),
            (kind, None) => Err(VocabularyError::InvalidRelation(format!(
                "kind `{}` requires a target",
                kind.as_str()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ObjectRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.target {
            None => f.write_str(self.kind.as_str()),
            Some(t) => write!(f, "{}@{}", self.kind.as_str(), t.as_str()),
        }
    }
}

/// How many contact points, hands and users perform the gesture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceMultiplicity {
    pub points: u32,
    pub hands: u8,
    pub users: u32,
}

impl DeviceMultiplicity {
    pub const SINGLE: DeviceMultiplicity = DeviceMultiplicity {
        points: 1,
        hands: 1,
        users: 1,
    };

    pub const fn new(points: u32, hands: u8, users: u32) -> Self {
        DeviceMultiplicity {
            points,
            hands,
            users,
        }
    }

    pub fn check(&self) -> Result<(), VocabularyError> {
        let bad = |why| Err(VocabularyError::InvalidMultiplicity(*self, why));
        if self.points == 0 {
            return bad("points must be positive");
        }
        if !(1..=2).contains(&self.hands) {
            return bad("hands must be 1 or 2");
        }
        if self.users == 0 {
            return bad("users must be positive");
        }
        if self.hands == 2 && self.points < 2 {
            return bad("a bimanual gesture needs at least two points");
        }
        Ok(())
    }
}

impl fmt::Display for DeviceMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}p{}h{}u", self.points, self.hands, self.users)
    }
}

/// Values of a gesture's assignment that mark a sequence of base gestures.
const SEQUENCE_VALUE: &str = "sequence";
/// `single-action` values performed as uninterrupted motion.
const CONTINUOUS_ACTIONS: [&str; 3] = ["translate", "rotate", "shake"];

/// One element of the vocabulary: a tuple of degree-of-freedom values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gesture {
    pub modality: Modality,
    /// Dimension name to value, in the governing spec's dimension order.
    pub assignment: IndexMap<String, String>,
    pub object_relation: ObjectRelation,
    pub multiplicity: DeviceMultiplicity,
}

impl Gesture {
    pub fn value(&self, dimension: &str) -> Option<&str> {
        self.assignment.get(dimension).map(String::as_str)
    }

    /// Stepped, continuous or composite execution.
    ///
    /// Composite when performed by several users or declared as a
    /// `sequence`; continuous when `continuity=continuous` or the tangible
    /// action is a motion (translate, rotate, shake); stepped otherwise.
    pub fn mode_class(&self) -> ModeClass {
        if self.multiplicity.users > 1 || self.assignment.values().any(|v| v == SEQUENCE_VALUE) {
            ModeClass::Composite
        } else if self.value("continuity") == Some("continuous")
            || self
                .value("single-action")
                .is_some_and(|a| CONTINUOUS_ACTIONS.contains(&a))
        {
            ModeClass::Continuous
        } else {
            ModeClass::Stepped
        }
    }

    /// Canonical text form, e.g.
    /// `touch:continuity=discrete,duration=short/started-on@node/1p1h1u`.
    pub fn fingerprint(&self) -> String {
        let dims = self
            .assignment
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "{}:{}/{}/{}",
            self.modality, dims, self.object_relation, self.multiplicity
        )
    }

    /// Order-independent identity of the gesture.
    pub fn key(&self) -> GestureKey {
        let mut pairs: Vec<_> = self.assignment.iter().collect();
        pairs.sort();
        let dims = pairs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        GestureKey(format!(
            "{}:{}/{}/{}",
            self.modality, dims, self.object_relation, self.multiplicity
        ))
    }
}

impl std::str::FromStr for Gesture {
    type Err = VocabularyError;

    /// Parses the [`Gesture::fingerprint`] form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |message: &str| VocabularyError::InvalidFingerprint {
            fingerprint: s.to_string(),
            message: message.to_string(),
        };
        let (modality, rest) = s.split_once(':').ok_or_else(|| bad("missing `modality:`"))?;
        let modality = Modality::parse(modality).ok_or_else(|| bad("unknown modality"))?;
        let mut parts = rest.rsplitn(3, '/');
        let (Some(mult), Some(rel), Some(dims)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected `dimensions/relation/multiplicity`"));
        };
        let mut assignment = IndexMap::new();
        for pair in dims.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = pair.split_once('=').ok_or_else(|| bad("dimension entries must be `name=value`"))?;
            if assignment.insert(k.to_string(), v.to_string()).is_some() {
                return Err(bad("repeated dimension"));
            }
        }
        let object_relation = match rel.split_once('@') {
            None => ObjectRelation {
                kind: RelationKind::parse(rel).ok_or_else(|| bad("unknown relation kind"))?,
                target: None,
            },
            Some((kind, target)) => ObjectRelation {
                kind: RelationKind::parse(kind).ok_or_else(|| bad("unknown relation kind"))?,
                target: Some(TargetClass::parse(target).ok_or_else(|| bad("unknown relation target"))?),
            },
        };
        object_relation.check()?;
        let number = |text: &str| text.parse::<u32>().map_err(|_| bad("malformed multiplicity"));
        let (points, rest) = mult.split_once('p').ok_or_else(|| bad("malformed multiplicity"))?;
        let (hands, rest) = rest.split_once('h').ok_or_else(|| bad("malformed multiplicity"))?;
        let users = rest.strip_suffix('u').ok_or_else(|| bad("malformed multiplicity"))?;
        let hands = u8::try_from(number(hands)?).map_err(|_| bad("malformed multiplicity"))?;
        let multiplicity = DeviceMultiplicity::new(number(points)?, hands, number(users)?);
        multiplicity.check()?;
        Ok(Gesture {
            modality,
            assignment,
            object_relation,
            multiplicity,
        })
    }
}

impl fmt::Display for Gesture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

/// Fingerprint with dimensions in name order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GestureKey(String);

/// Reserved constraint slots that address gesture attributes other than dimensions.
pub const RESERVED_SLOTS: [&str; 6] = ["modality", "points", "hands", "users", "object-relation", "target"];

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VocabularySpec {
    pub dimensions: Vec<Dimension>,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
}

fn check_token(what: &str, s: &str) -> Result<(), VocabularyError> {
    let ok = !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '-' | '_' | '.' | '+'));
    if ok {
        Ok(())
    } else {
        Err(VocabularyError::InvalidSpec(format!(
            "{what} `{s}` must be non-empty and use only letters, digits, '-', '_', '.', '+'"
        )))
    }
}

impl VocabularySpec {
    pub fn new(dimensions: Vec<Dimension>, constraints: Vec<Constraint>) -> Result<Self, VocabularyError> {
        let spec = VocabularySpec {
            dimensions,
            constraints,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dimension(&self, name: &str) -> Option<&Dimension> {
        self.dimensions.iter().find(|d| d.name == name)
    }

    /// Modalities that at least one dimension applies to, in canonical order.
    pub fn modalities(&self) -> Vec<Modality> {
        Modality::ALL
            .into_iter()
            .filter(|m| self.dimensions.iter().any(|d| d.applies_to(*m)))
            .collect()
    }

    pub fn dimensions_for(&self, modality: Modality) -> impl Iterator<Item = &Dimension> {
        self.dimensions.iter().filter(move |d| d.applies_to(modality))
    }

    pub fn validate(&self) -> Result<(), VocabularyError> {
        let invalid = |m: String| Err(VocabularyError::InvalidSpec(m));
        let mut names = HashSet::new();
        for d in &self.dimensions {
            check_token("dimension name", &d.name)?;
            if RESERVED_SLOTS.contains(&d.name.as_str()) {
                return invalid(format!("dimension name `{}` is reserved", d.name));
            }
            if !names.insert(d.name.as_str()) {
                return invalid(format!("duplicate dimension `{}`", d.name));
            }
            if d.values.is_empty() {
                return invalid(format!("dimension `{}` has no values", d.name));
            }
            if d.modalities.is_empty() {
                return invalid(format!("dimension `{}` applies to no modality", d.name));
            }
            let mut seen = HashSet::new();
            for v in &d.values {
                check_token("value", v)?;
                if !seen.insert(v.as_str()) {
                    return invalid(format!("dimension `{}` repeats value `{v}`", d.name));
                }
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            for p in [&c.condition, &c.consequence] {
                p.check(self)
                    .map_err(|m| VocabularyError::InvalidSpec(format!("constraint {i}: {m}")))?;
            }
        }
        Ok(())
    }
}

/// Duplicate-free ordered collection of gestures with lookup indices.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    gestures: Vec<Gesture>,
    by_key: HashMap<GestureKey, usize>,
    by_fingerprint: HashMap<String, usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.gestures == other.gestures
    }
}

impl Vocabulary {
    pub fn new(gestures: Vec<Gesture>) -> Result<Self, VocabularyError> {
        let mut by_key = HashMap::with_capacity(gestures.len());
        let mut by_fingerprint = HashMap::with_capacity(gestures.len());
        for (i, g) in gestures.iter().enumerate() {
            g.object_relation.check()?;
            g.multiplicity.check()?;
            if by_key.insert(g.key(), i).is_some() {
                return Err(VocabularyError::DuplicateGesture(g.fingerprint()));
            }
            by_fingerprint.insert(g.fingerprint(), i);
        }
        Ok(Vocabulary {
            gestures,
            by_key,
            by_fingerprint,
        })
    }

    pub fn gestures(&self) -> &[Gesture] {
        &self.gestures
    }

    pub fn get(&self, index: usize) -> Option<&Gesture> {
        self.gestures.get(index)
    }

    pub fn len(&self) -> usize {
        self.gestures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gestures.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Gesture> {
        self.gestures.iter()
    }

    pub fn index_of(&self, gesture: &Gesture) -> Option<usize> {
        self.by_key.get(&gesture.key()).copied()
    }

    pub fn index_of_fingerprint(&self, fingerprint: &str) -> Option<usize> {
        self.by_fingerprint.get(fingerprint).copied()
    }

    /// Concatenation of two vocabularies; fails on shared gestures.
    pub fn concat(self, other: Vocabulary) -> Result<Vocabulary, VocabularyError> {
        let mut gestures = self.gestures;
        gestures.extend(other.gestures);
        Vocabulary::new(gestures)
    }
}

impl<'a> IntoIterator for &'a Vocabulary {
    type Item = &'a Gesture;
    type IntoIter = std::slice::Iter<'a, Gesture>;

    fn into_iter(self) -> Self::IntoIter {
        self.gestures.iter()
    }
}

/// Checks dimension coverage, value domains and every applicable constraint.
/// An empty result means the gesture is valid for `spec`.
pub fn validate_gesture(gesture: &Gesture, spec: &VocabularySpec) -> Vec<Violation> {
    let mut violations = Vec::new();
    if let Err(e) = gesture.multiplicity.check() {
        violations.push(Violation::Multiplicity(e.to_string()));
    }
    if let Err(e) = gesture.object_relation.check() {
        violations.push(Violation::Relation(e.to_string()));
    }
    for d in spec.dimensions_for(gesture.modality) {
        match gesture.value(&d.name) {
            None => violations.push(Violation::MissingDimension(d.name.clone())),
            Some(v) if d.value_index(v).is_none() => violations.push(Violation::UnknownValue {
                dimension: d.name.clone(),
                value: v.to_string(),
            }),
            Some(_) => {}
        }
    }
    for name in gesture.assignment.keys() {
        let applicable = spec
            .dimension(name)
            .is_some_and(|d| d.applies_to(gesture.modality));
        if !applicable {
            violations.push(Violation::ExtraneousDimension(name.clone()));
        }
    }
    for (index, c) in spec.constraints.iter().enumerate() {
        if c.violated_by(gesture, spec) {
            violations.push(Violation::Constraint {
                index,
                constraint: c.to_string(),
            });
        }
    }
    violations
}
