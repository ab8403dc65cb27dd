//! Basic interaction tasks for graph exploration and editing.
//!
//! A [`TaskCatalog`] is the task set a mapping is defined over. The built-in
//! catalogs ([`builtin_catalog`]) hold the exploration and editing tasks with
//! the interaction mode most commonly used for each; user catalogs are read
//! from JSON with [`load_catalog`].

mod builtin;
mod io;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use builtin::{builtin_catalog, builtin_task_id, ActivitySelection};
pub use io::{catalog_to_json, load_catalog, load_catalog_str};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate task id `{0}`")]
    DuplicateId(String),
    #[error("task `{task}`: unknown {activity} category `{category}`")]
    UnknownCategory {
        task: String,
        activity: Activity,
        category: String,
    },
    #[error("task `{task}`: {message}")]
    InvalidTask { task: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Activity {
    Exploration,
    Editing,
}

impl fmt::Display for Activity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Activity::Exploration => "exploration",
            Activity::Editing => "editing",
        })
    }
}

/// How consistently the reviewed systems used the task's interaction mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frequency {
    Always,
    Mostly,
    /// Varies between stepped, continuous and composite; no preferred mode.
    VaryingAll,
}

/// Interaction mode: stepped, continuous or composite execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeClass {
    Stepped,
    Continuous,
    Composite,
}

impl fmt::Display for ModeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeClass::Stepped => "stepped",
            ModeClass::Continuous => "continuous",
            ModeClass::Composite => "composite",
        })
    }
}

/// A task's annotated interaction mode, e.g. "mostly continuous".
///
/// `mode` is absent exactly when `frequency` is [`Frequency::VaryingAll`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModeTag", into = "RawModeTag")]
pub struct InteractionModeTag {
    frequency: Frequency,
    mode: Option<ModeClass>,
}

impl InteractionModeTag {
    pub const fn always(mode: ModeClass) -> Self {
        Self {
            frequency: Frequency::Always,
            mode: Some(mode),
        }
    }

    pub const fn mostly(mode: ModeClass) -> Self {
        Self {
            frequency: Frequency::Mostly,
            mode: Some(mode),
        }
    }

    pub const fn varying() -> Self {
        Self {
            frequency: Frequency::VaryingAll,
            mode: None,
        }
    }

    pub fn new(frequency: Frequency, mode: Option<ModeClass>) -> Result<Self, String> {
        match (frequency, mode) {
            (Frequency::VaryingAll, None) => Ok(Self::varying()),
            (Frequency::VaryingAll, Some(_)) => {
                Err("mode must be absent when frequency is varying-all".into())
            }
            (_, None) => Err("mode is required unless frequency is varying-all".into()),
            (frequency, mode) => Ok(Self { frequency, mode }),
        }
    }

    pub fn frequency(&self) -> Frequency {
        self.frequency
    }

    pub fn mode(&self) -> Option<ModeClass> {
        self.mode
    }

    /// Whether a gesture executed in `mode` fits this tag. Varying tags accept anything.
    pub fn accepts(&self, mode: ModeClass) -> bool {
        match self.mode {
            None => true,
            Some(m) => m == mode,
        }
    }
}

impl fmt::Display for InteractionModeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.frequency, self.mode) {
            (Frequency::Always, Some(m)) => write!(f, "always {m}"),
            (Frequency::Mostly, Some(m)) => write!(f, "mostly {m}"),
            _ => f.write_str("varying between all three"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawModeTag {
    frequency: Frequency,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<ModeClass>,
}

impl TryFrom<RawModeTag> for InteractionModeTag {
    type Error = String;

    fn try_from(raw: RawModeTag) -> Result<Self, Self::Error> {
        InteractionModeTag::new(raw.frequency, raw.mode)
    }
}

impl From<InteractionModeTag> for RawModeTag {
    fn from(tag: InteractionModeTag) -> Self {
        RawModeTag {
            frequency: tag.frequency,
            mode: tag.mode,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoryName {
    Select,
    Explore,
    Reconfigure,
    Encode,
    AbstractElaborate,
    Filter,
    Connect,
    Create,
    Insert,
    Delete,
    Update,
    Navigate,
    Miscellaneous,
}

impl CategoryName {
    pub const EXPLORATION: [CategoryName; 7] = [
        CategoryName::Select,
        CategoryName::Explore,
        CategoryName::Reconfigure,
        CategoryName::Encode,
        CategoryName::AbstractElaborate,
        CategoryName::Filter,
        CategoryName::Connect,
    ];

    pub const EDITING: [CategoryName; 7] = [
        CategoryName::Create,
        CategoryName::Insert,
        CategoryName::Delete,
        CategoryName::Update,
        CategoryName::Navigate,
        CategoryName::Select,
        CategoryName::Miscellaneous,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CategoryName::Select => "select",
            CategoryName::Explore => "explore",
            CategoryName::Reconfigure => "reconfigure",
            CategoryName::Encode => "encode",
            CategoryName::AbstractElaborate => "abstract-elaborate",
            CategoryName::Filter => "filter",
            CategoryName::Connect => "connect",
            CategoryName::Create => "create",
            CategoryName::Insert => "insert",
            CategoryName::Delete => "delete",
            CategoryName::Update => "update",
            CategoryName::Navigate => "navigate",
            CategoryName::Miscellaneous => "miscellaneous",
        }
    }

    pub fn parse(s: &str) -> Option<CategoryName> {
        Self::EXPLORATION
            .iter()
            .chain(Self::EDITING.iter())
            .copied()
            .find(|c| c.as_str() == s)
    }

    pub fn belongs_to(&self, activity: Activity) -> bool {
        match activity {
            Activity::Exploration => Self::EXPLORATION.contains(self),
            Activity::Editing => Self::EDITING.contains(self),
        }
    }
}

impl fmt::Display for CategoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Category of a task; the name must be valid for the activity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaskCategory {
    activity: Activity,
    name: CategoryName,
}

impl TaskCategory {
    pub fn new(activity: Activity, name: CategoryName) -> Option<Self> {
        name.belongs_to(activity)
            .then_some(TaskCategory { activity, name })
    }

    pub fn activity(&self) -> Activity {
        self.activity
    }

    pub fn name(&self) -> CategoryName {
        self.name
    }
}

/// Kinds of object a task operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectClass {
    Node,
    Edge,
    Subgraph,
    Label,
    Attribute,
    Group,
    View,
    Document,
}

impl ObjectClass {
    /// Object classes that correspond to data items drawn in the visualization.
    pub fn is_data_object(&self) -> bool {
        matches!(
            self,
            ObjectClass::Node | ObjectClass::Edge | ObjectClass::Subgraph | ObjectClass::Label
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: String,
    pub name: String,
    pub category: TaskCategory,
    pub mode_tag: InteractionModeTag,
    pub object_scope: BTreeSet<ObjectClass>,
    /// True for editing operations that change the data set.
    pub mutating: bool,
    /// Relative usage frequency.
    pub frequency_weight: f64,
}

impl Task {
    pub fn activity(&self) -> Activity {
        self.category.activity
    }

    fn check(&self) -> Result<(), CatalogError> {
        let invalid = |message: &str| CatalogError::InvalidTask {
            task: self.id.clone(),
            message: message.to_string(),
        };
        if self.id.is_empty() {
            return Err(invalid("id must not be empty"));
        }
        if self.object_scope.is_empty() {
            return Err(invalid("object_scope must not be empty"));
        }
        if !(self.frequency_weight.is_finite() && self.frequency_weight >= 0.0) {
            return Err(invalid("frequency_weight must be a finite number >= 0"));
        }
        Ok(())
    }
}

/// Ordered, duplicate-free collection of tasks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TaskCatalog {
    tasks: Vec<Task>,
}

impl TaskCatalog {
    pub fn new(tasks: Vec<Task>) -> Result<Self, CatalogError> {
        let mut seen = HashSet::with_capacity(tasks.len());
        for task in &tasks {
            task.check()?;
            if !seen.insert(task.id.as_str()) {
                return Err(CatalogError::DuplicateId(task.id.clone()));
            }
        }
        Ok(TaskCatalog { tasks })
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Task> {
        self.tasks.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Task> {
        self.tasks.iter().find(|t| t.id == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.tasks.iter().position(|t| t.id == id)
    }

    /// Distinct category names in first-appearance order.
    pub fn category_names(&self) -> Vec<CategoryName> {
        let mut names = Vec::new();
        for t in &self.tasks {
            if !names.contains(&t.category.name) {
                names.push(t.category.name);
            }
        }
        names
    }

    pub fn filter(&self, filter: &TaskFilter) -> TaskCatalog {
        filter_tasks(self, filter)
    }
}

impl<'a> IntoIterator for &'a TaskCatalog {
    type Item = &'a Task;
    type IntoIter = std::slice::Iter<'a, Task>;

    fn into_iter(self) -> Self::IntoIter {
        self.tasks.iter()
    }
}

/// Conjunctive task filter. Unset fields match everything; an empty filter
/// keeps the whole catalog.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFilter {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub activity: Option<Activity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CategoryName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<Frequency>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeClass>,
    /// Matches tasks whose scope intersects this set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_scope: Option<BTreeSet<ObjectClass>>,
}

impl TaskFilter {
    pub fn activity(activity: Activity) -> Self {
        TaskFilter {
            activity: Some(activity),
            ..Default::default()
        }
    }

    pub fn category(category: CategoryName) -> Self {
        TaskFilter {
            category: Some(category),
            ..Default::default()
        }
    }

    pub fn matches(&self, task: &Task) -> bool {
        self.activity.is_none_or(|a| task.activity() == a)
            && self.category.is_none_or(|c| task.category.name == c)
            && self.frequency.is_none_or(|f| task.mode_tag.frequency == f)
            && self.mode.is_none_or(|m| task.mode_tag.mode == Some(m))
            && self
                .object_scope
                .as_ref()
                .is_none_or(|s| !s.is_disjoint(&task.object_scope))
    }
}

pub fn filter_tasks(catalog: &TaskCatalog, filter: &TaskFilter) -> TaskCatalog {
    TaskCatalog {
        tasks: catalog
            .tasks
            .iter()
            .filter(|t| filter.matches(t))
            .cloned()
            .collect(),
    }
}

/// Agreement between two tasks over activity, category name, object scope
/// (Jaccard overlap), mutating flag and mode class; each feature weighs 1/5.
pub fn task_similarity(a: &Task, b: &Task) -> f64 {
    let eq = |x: bool| if x { 1.0 } else { 0.0 };
    let union = a.object_scope.union(&b.object_scope).count();
    let scope = if union == 0 {
        1.0
    } else {
        a.object_scope.intersection(&b.object_scope).count() as f64 / union as f64
    };
    let total = eq(a.activity() == b.activity())
        + eq(a.category.name == b.category.name)
        + scope
        + eq(a.mutating == b.mutating)
        + eq(a.mode_tag.mode == b.mode_tag.mode);
    total / 5.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn task(id: &str, activity: Activity, name: CategoryName, scope: &[ObjectClass]) -> Task {
        Task {
            id: id.into(),
            name: id.into(),
            category: TaskCategory::new(activity, name).unwrap(),
            mode_tag: InteractionModeTag::always(ModeClass::Stepped),
            object_scope: scope.iter().copied().collect(),
            mutating: false,
            frequency_weight: 1.0,
        }
    }

    #[test]
    fn mode_tag_invariant() {
        assert!(InteractionModeTag::new(Frequency::VaryingAll, Some(ModeClass::Stepped)).is_err());
        assert!(InteractionModeTag::new(Frequency::Always, None).is_err());
        assert_eq!(
            InteractionModeTag::new(Frequency::Mostly, Some(ModeClass::Continuous)).unwrap(),
            InteractionModeTag::mostly(ModeClass::Continuous)
        );
    }

    #[test]
    fn category_activity_check() {
        assert!(TaskCategory::new(Activity::Exploration, CategoryName::Navigate).is_none());
        assert!(TaskCategory::new(Activity::Editing, CategoryName::Connect).is_none());
        assert!(TaskCategory::new(Activity::Editing, CategoryName::Select).is_some());
        assert!(TaskCategory::new(Activity::Exploration, CategoryName::Select).is_some());
    }

    #[test]
    fn catalog_rejects_duplicates_and_empty_scope() {
        let a = task("a", Activity::Exploration, CategoryName::Select, &[ObjectClass::Node]);
        let err = TaskCatalog::new(vec![a.clone(), a.clone()]).unwrap_err();
        assert!(matches!(err, CatalogError::DuplicateId(id) if id == "a"));

        let empty = task("b", Activity::Exploration, CategoryName::Select, &[]);
        assert!(matches!(
            TaskCatalog::new(vec![empty]),
            Err(CatalogError::InvalidTask { .. })
        ));

        let mut neg = a;
        neg.frequency_weight = -1.0;
        assert!(TaskCatalog::new(vec![neg]).is_err());
    }

    #[test]
    fn similarity_extremes() {
        let a = task("a", Activity::Exploration, CategoryName::Select, &[ObjectClass::Node]);
        assert_eq!(task_similarity(&a, &a), 1.0);

        let mut b = task("b", Activity::Editing, CategoryName::Delete, &[ObjectClass::Edge]);
        b.mutating = true;
        b.mode_tag = InteractionModeTag::always(ModeClass::Composite);
        assert_eq!(task_similarity(&a, &b), 0.0);
        assert_eq!(task_similarity(&b, &a), 0.0);
    }

    #[test]
    fn similarity_partial_scope() {
        let a = task(
            "a",
            Activity::Exploration,
            CategoryName::Select,
            &[ObjectClass::Node, ObjectClass::Edge],
        );
        let b = task("b", Activity::Exploration, CategoryName::Select, &[ObjectClass::Node]);
        // 4 equal features plus scope overlap 1/2
        assert!((task_similarity(&a, &b) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn filter_empty_and_identity() {
        let a = task("a", Activity::Exploration, CategoryName::Select, &[ObjectClass::Node]);
        let b = task("b", Activity::Editing, CategoryName::Create, &[ObjectClass::Document]);
        let cat = TaskCatalog::new(vec![a, b]).unwrap();
        assert_eq!(cat.filter(&TaskFilter::default()), cat);
        assert!(cat
            .filter(&TaskFilter::category(CategoryName::Connect))
            .is_empty());
        let scoped = cat.filter(&TaskFilter {
            object_scope: Some([ObjectClass::Document].into()),
            ..Default::default()
        });
        assert_eq!(scoped.len(), 1);
        assert_eq!(scoped.tasks()[0].id, "b");
    }
}
