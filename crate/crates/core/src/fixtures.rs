//! Shipped instances: the six example mappings (one task per modality
//! pairing) and two small optimizer benchmarks.

use crate::catalog::{builtin_catalog, builtin_task_id, Activity, ActivitySelection, ObjectClass, Task, TaskCatalog};
use crate::criteria::{Criterion, CriterionContext, WeightVector};
use crate::mapping::{Mapping, MappingEntry};
use crate::vocabulary::{
    builtin_spec_all, default_multiplicities, default_object_relations, Constraint, DeviceMultiplicity, Dimension,
    Gesture, Modality, ObjectRelation, Predicate, RelationKind, SpecDocument, TargetClass, Vocabulary, VocabularySpec,
};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub catalog: TaskCatalog,
    pub spec: SpecDocument,
    pub vocabulary: Vocabulary,
}

impl Fixture {
    fn new(catalog: TaskCatalog, spec: SpecDocument) -> Self {
        let vocabulary = spec.vocabulary().expect("fixture spec is valid");
        Fixture {
            catalog,
            spec,
            vocabulary,
        }
    }

    pub fn context(&self) -> CriterionContext {
        CriterionContext::new(self.catalog.clone(), self.vocabulary.clone())
    }
}

fn builtin_task(activity: Activity, slug: &str) -> Task {
    let selection = match activity {
        Activity::Exploration => ActivitySelection::Exploration,
        Activity::Editing => ActivitySelection::Editing,
    };
    builtin_catalog(selection)
        .get(&builtin_task_id(activity, slug))
        .cloned()
        .expect("builtin task")
}

fn narrowed(activity: Activity, slug: &str, id: &str, name: &str, scope: Option<ObjectClass>) -> Task {
    let mut t = builtin_task(activity, slug);
    t.id = id.to_string();
    t.name = name.to_string();
    if let Some(s) = scope {
        t.object_scope = [s].into();
    }
    t
}

/// Select node, center view, apply graph layout, hide labels, duplicate
/// node and delete subgraph, taken from the built-in catalog.
pub fn demo_catalog() -> TaskCatalog {
    use Activity::{Editing, Exploration};
    TaskCatalog::new(vec![
        narrowed(Exploration, "select-node", "select-node", "Select node", None),
        narrowed(Exploration, "center-view", "center-view", "Center view", None),
        narrowed(Exploration, "adjust-graph-layout", "apply-layout", "Apply graph layout", None),
        narrowed(Exploration, "hide-labels", "hide-labels", "Hide labels", None),
        narrowed(Editing, "duplicate-node-edge-subgraph", "duplicate-node", "Duplicate node", Some(ObjectClass::Node)),
        narrowed(Editing, "delete-nodes-edges-subgraph", "delete-subgraph", "Delete subgraph", Some(ObjectClass::Subgraph)),
    ])
    .expect("demo catalog is valid")
}

fn gesture(modality: Modality, pairs: &[(&str, &str)], relation: ObjectRelation, multiplicity: DeviceMultiplicity) -> Gesture {
    let mut assignment = indexmap::IndexMap::new();
    for d in builtin_spec_all().dimensions_for(modality) {
        let value = pairs
            .iter()
            .find(|(k, _)| *k == d.name)
            .map(|(_, v)| *v)
            .expect("every dimension is given");
        assignment.insert(d.name.clone(), value.to_string());
    }
    Gesture {
        modality,
        assignment,
        object_relation: relation,
        multiplicity,
    }
}

const NODE_START: ObjectRelation = ObjectRelation::on(RelationKind::StartedOn, TargetClass::Node);

/// The six example gestures by name, in demo-catalog order.
pub fn demo_gestures() -> Vec<(&'static str, Gesture)> {
    use Modality::{Pen, Tangible, Touch};
    vec![
        (
            "tap-node",
            gesture(
                Touch,
                &[("continuity", "discrete"), ("duration", "short"), ("nature-of-motion", "physical"), ("linearity", "none"), ("relation-of-movement", "none"), ("composition", "single")],
                NODE_START,
                DeviceMultiplicity::SINGLE,
            ),
        ),
        (
            "shake-canvas",
            gesture(
                Touch,
                &[("continuity", "continuous"), ("duration", "short"), ("nature-of-motion", "physical"), ("linearity", "direction-changes"), ("relation-of-movement", "parallel"), ("composition", "single")],
                ObjectRelation::NONE,
                DeviceMultiplicity::new(3, 1, 1),
            ),
        ),
        (
            "draw-result",
            gesture(
                Pen,
                &[("continuity", "continuous"), ("duration", "long"), ("nature-of-motion", "symbolic"), ("linearity", "direction-changes"), ("composition", "single")],
                ObjectRelation::on(RelationKind::StartedOn, TargetClass::ViewArea),
                DeviceMultiplicity::SINGLE,
            ),
        ),
        (
            "cross-out-label",
            gesture(
                Pen,
                &[("continuity", "continuous"), ("duration", "short"), ("nature-of-motion", "metaphorical"), ("linearity", "multi-stroke"), ("composition", "sequence")],
                ObjectRelation::on(RelationKind::Crossed, TargetClass::Label),
                DeviceMultiplicity::SINGLE,
            ),
        ),
        (
            "stamp",
            gesture(
                Tangible,
                &[("form", "thick-rigid"), ("material", "acrylic"), ("role", "function"), ("single-action", "place"), ("tangible-type", "same"), ("coupling", "coupled"), ("composition", "sequence")],
                NODE_START,
                DeviceMultiplicity::new(2, 1, 1),
            ),
        ),
        (
            "select-then-flip",
            gesture(
                Tangible,
                &[("form", "thick-rigid"), ("material", "plastic"), ("role", "function"), ("single-action", "flip"), ("tangible-type", "none"), ("coupling", "none"), ("composition", "sequence")],
                ObjectRelation::on(RelationKind::Crossed, TargetClass::Node),
                DeviceMultiplicity::SINGLE,
            ),
        ),
    ]
}

/// Additional gestures of the demo vocabulary.
fn demo_alternatives() -> Vec<Gesture> {
    use Modality::{Tangible, Touch};
    let spread = |rom| {
        gesture(
            Touch,
            &[("continuity", "continuous"), ("duration", "short"), ("nature-of-motion", "physical"), ("linearity", "straight"), ("relation-of-movement", rom), ("composition", "single")],
            ObjectRelation::NONE,
            DeviceMultiplicity::new(2, 1, 1),
        )
    };
    let token = |action| {
        gesture(
            Tangible,
            &[("form", "thick-rigid"), ("material", "acrylic"), ("role", "function"), ("single-action", action), ("tangible-type", "none"), ("coupling", "none"), ("composition", "single")],
            NODE_START,
            DeviceMultiplicity::SINGLE,
        )
    };
    vec![
        spread("divergent"),
        spread("convergent"),
        gesture(
            Touch,
            &[("continuity", "discrete"), ("duration", "long"), ("nature-of-motion", "physical"), ("linearity", "none"), ("relation-of-movement", "none"), ("composition", "single")],
            NODE_START,
            DeviceMultiplicity::SINGLE,
        ),
        token("place"),
        token("lift"),
    ]
}

/// Demo catalog with the built-in spec narrowed to a curated vocabulary of
/// the six example gestures plus five alternatives (11 gestures).
pub fn demo() -> Fixture {
    let mut gestures: Vec<Gesture> = demo_gestures().into_iter().map(|(_, g)| g).collect();
    gestures.extend(demo_alternatives());
    let spec = SpecDocument::new(builtin_spec_all(), default_object_relations(), default_multiplicities())
        .with_gestures(&gestures);
    Fixture::new(demo_catalog(), spec)
}

/// Each demo task mapped to its example gesture.
pub fn demo_mapping_entries() -> Vec<MappingEntry> {
    demo_catalog()
        .iter()
        .zip(demo_gestures())
        .map(|(t, (_, g))| MappingEntry {
            task: t.id.clone(),
            gesture_fingerprint: g.fingerprint(),
        })
        .collect()
}

pub fn demo_mapping(vocab: &Vocabulary) -> Mapping {
    crate::mapping::mapping_from_entries(&demo_mapping_entries(), vocab).expect("example gestures are in the vocabulary")
}

/// α = 1 for the eight built-in criteria.
pub fn all_ones_weights() -> WeightVector {
    WeightVector::uniform(&Criterion::all_builtin(), 1.0).expect("valid weights")
}

fn small_touch_spec(rom: [&str; 3], continuous_pairs: bool) -> SpecDocument {
    let iff = |a: Predicate, b: Predicate| [Constraint::implies(a.clone(), b.clone()), Constraint::implies(b, a)];
    let mut constraints = Vec::new();
    constraints.extend(iff(Predicate::new("points", "1"), Predicate::new("relation-of-movement", "none")));
    if continuous_pairs {
        constraints.push(Constraint::implies(Predicate::new("points", "2"), Predicate::new("continuity", "continuous")));
    }
    constraints.push(Constraint::implies(Predicate::new("object-relation", "started-on"), Predicate::new("points", "1")));
    let spec = VocabularySpec::new(
        vec![
            Dimension::new("continuity", ["discrete", "continuous"], [Modality::Touch]),
            Dimension::new("relation-of-movement", rom, [Modality::Touch]),
        ],
        constraints,
    )
    .expect("valid spec");
    SpecDocument::new(spec, vec![ObjectRelation::NONE, NODE_START], vec![DeviceMultiplicity::SINGLE, DeviceMultiplicity::new(2, 1, 1)])
}

fn builtin_tasks(ids: &[(Activity, &str)]) -> TaskCatalog {
    TaskCatalog::new(ids.iter().map(|&(a, slug)| builtin_task(a, slug)).collect()).expect("distinct tasks")
}

/// Four built-in tasks over a six-gesture touch vocabulary.
pub fn optimizer_4x6() -> Fixture {
    use Activity::{Editing, Exploration};
    Fixture::new(
        builtin_tasks(&[
            (Exploration, "select-node"),
            (Exploration, "pan-view"),
            (Exploration, "zoom-view"),
            (Editing, "delete-nodes-edges-subgraph"),
        ]),
        small_touch_spec(["none", "divergent", "convergent"], true),
    )
}

/// Five built-in tasks over an eight-gesture touch vocabulary.
pub fn optimizer_5x8() -> Fixture {
    use Activity::{Editing, Exploration};
    Fixture::new(
        builtin_tasks(&[
            (Exploration, "select-node"),
            (Exploration, "pan-view"),
            (Exploration, "zoom-view"),
            (Editing, "delete-nodes-edges-subgraph"),
            (Editing, "insert-node-edge"),
        ]),
        small_touch_spec(["none", "parallel", "divergent"], false),
    )
}
