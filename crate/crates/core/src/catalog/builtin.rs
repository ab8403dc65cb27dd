use serde::{Deserialize, Serialize};

use super::{
    Activity, CategoryName, InteractionModeTag, ModeClass, ObjectClass, Task, TaskCatalog,
    TaskCategory,
};

use CategoryName as C;
use ModeClass::{Composite, Continuous, Stepped};
use ObjectClass::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActivitySelection {
    Exploration,
    Editing,
    Both,
}

impl ActivitySelection {
    fn includes(&self, activity: Activity) -> bool {
        match self {
            ActivitySelection::Both => true,
            ActivitySelection::Exploration => activity == Activity::Exploration,
            ActivitySelection::Editing => activity == Activity::Editing,
        }
    }
}

const ALWAYS_STEPPED: InteractionModeTag = InteractionModeTag::always(Stepped);
const MOSTLY_STEPPED: InteractionModeTag = InteractionModeTag::mostly(Stepped);
const VARYING: InteractionModeTag = InteractionModeTag::varying();

struct Row {
    slug: &'static str,
    name: &'static str,
    category: CategoryName,
    tag: InteractionModeTag,
    scope: &'static [ObjectClass],
    mutating: bool,
}

const fn row(
    slug: &'static str,
    name: &'static str,
    category: CategoryName,
    tag: InteractionModeTag,
    scope: &'static [ObjectClass],
    mutating: bool,
) -> Row {
    Row {
        slug,
        name,
        category,
        tag,
        scope,
        mutating,
    }
}

// Slash-separated actions are split into separate tasks; slash-separated
// objects ("node/edge") stay within one task.
#[rustfmt::skip]
const EXPLORATION: &[Row] = &[
    row("select-node", "Select node", C::Select, MOSTLY_STEPPED, &[Node], false),
    row("deselect-node", "Deselect node", C::Select, ALWAYS_STEPPED, &[Node], false),
    row("select-multiple-nodes", "Select multiple nodes", C::Select, VARYING, &[Node], false),
    row("deselect-multiple-nodes", "Deselect multiple nodes", C::Select, ALWAYS_STEPPED, &[Node], false),
    row("temporary-select-node", "Temporary select node", C::Select, VARYING, &[Node], false),
    row("temporary-select-edge", "Temporary select edge", C::Select, VARYING, &[Edge], false),
    row("pan-view", "Pan view", C::Explore, InteractionModeTag::mostly(Continuous), &[View], false),
    row("center-view", "Center view", C::Explore, ALWAYS_STEPPED, &[View], false),
    row("rotate-view", "Rotate view", C::Explore, InteractionModeTag::mostly(Composite), &[View], false),
    row("zoom-view", "Zoom view", C::Explore, InteractionModeTag::mostly(Continuous), &[View], false),
    row("move-selected-nodes", "Move selected nodes", C::Reconfigure, InteractionModeTag::mostly(Composite), &[Node], false),
    row("adjust-graph-layout", "Adjust graph layout", C::Reconfigure, ALWAYS_STEPPED, &[View], false),
    row("change-node-size", "Change node size", C::Encode, MOSTLY_STEPPED, &[Node], false),
    row("change-label-size", "Change label size", C::Encode, MOSTLY_STEPPED, &[Label], false),
    row("change-node-edge-mapping", "Change node/edge mapping", C::Encode, MOSTLY_STEPPED, &[Node, Edge, Attribute], false),
    row("color-node-edge", "Color node/edge independently from mapping", C::Encode, ALWAYS_STEPPED, &[Node, Edge], false),
    row("expand-node", "Expand node", C::AbstractElaborate, ALWAYS_STEPPED, &[Node], false),
    row("collapse-node", "Collapse node", C::AbstractElaborate, ALWAYS_STEPPED, &[Node], false),
    row("apply-node-edge-filter", "Apply node/edge filter", C::Filter, VARYING, &[Node, Edge], false),
    row("show-labels", "Show labels", C::Connect, ALWAYS_STEPPED, &[Label], false),
    row("hide-labels", "Hide labels", C::Connect, ALWAYS_STEPPED, &[Label], false),
    row("show-node-edge-attributes", "Show node/edge attributes", C::Connect, ALWAYS_STEPPED, &[Node, Edge, Attribute], false),
    row("show-metrics-statistics", "Show metrics/statistics", C::Connect, ALWAYS_STEPPED, &[Subgraph, Document], false),
];

#[rustfmt::skip]
const EDITING: &[Row] = &[
    row("create-empty-document", "Create empty document", C::Create, ALWAYS_STEPPED, &[Document], true),
    row("insert-node-edge", "Insert node/edge", C::Insert, InteractionModeTag::mostly(Composite), &[Node, Edge], true),
    row("insert-copied-node-edge-subgraph", "Insert copied node/edge/subgraph", C::Insert, ALWAYS_STEPPED, &[Node, Edge, Subgraph], true),
    row("duplicate-node-edge-subgraph", "Duplicate node/edge/subgraph", C::Insert, ALWAYS_STEPPED, &[Node, Edge, Subgraph], true),
    row("add-node-edge-attribute-label", "Add node/edge attribute/label", C::Insert, ALWAYS_STEPPED, &[Node, Edge, Attribute, Label], true),
    row("add-group", "Add group to selected nodes/edges", C::Insert, ALWAYS_STEPPED, &[Node, Edge, Group], true),
    row("delete-nodes-edges-subgraph", "Delete node(s)/edge(s)/subgraph", C::Delete, ALWAYS_STEPPED, &[Node, Edge, Subgraph], true),
    row("remove-group", "Remove group", C::Delete, ALWAYS_STEPPED, &[Group], true),
    row("update-node-edge-attribute-value", "Update node/edge attribute value", C::Update, ALWAYS_STEPPED, &[Node, Edge, Attribute], true),
    row("update-node-edge-label", "Update node/edge label", C::Update, ALWAYS_STEPPED, &[Node, Edge, Label], true),
    row("pan-view", "Pan view", C::Navigate, InteractionModeTag::always(Continuous), &[View], false),
    row("zoom-view", "Zoom view", C::Navigate, MOSTLY_STEPPED, &[View], false),
    row("select-node", "Select node", C::Select, MOSTLY_STEPPED, &[Node], false),
    row("deselect-node", "Deselect node", C::Select, ALWAYS_STEPPED, &[Node], false),
    row("select-edge", "Select edge", C::Select, MOSTLY_STEPPED, &[Edge], false),
    row("deselect-edge", "Deselect edge", C::Select, ALWAYS_STEPPED, &[Edge], false),
    row("select-multiple-nodes", "Select multiple nodes", C::Select, VARYING, &[Node], false),
    row("deselect-multiple-nodes", "Deselect multiple nodes", C::Select, ALWAYS_STEPPED, &[Node], false),
    row("select-multiple-edges", "Select multiple edges", C::Select, VARYING, &[Edge], false),
    row("deselect-multiple-edges", "Deselect multiple edges", C::Select, ALWAYS_STEPPED, &[Edge], false),
    row("copy-nodes-edges-subgraphs", "Copy node(s)/edge(s)/subgraph(s)", C::Miscellaneous, ALWAYS_STEPPED, &[Node, Edge, Subgraph], false),
    row("cut-nodes-subgraphs", "Cut node(s)/subgraph(s)", C::Miscellaneous, ALWAYS_STEPPED, &[Node, Subgraph], true),
    row("change-edge-path", "Change edge path", C::Miscellaneous, InteractionModeTag::always(Composite), &[Edge], true),
];

/// Id of a built-in task: `<activity>/<slug>`, e.g. `exploration/pan-view`.
pub fn builtin_task_id(activity: Activity, slug: &str) -> String {
    format!("{activity}/{slug}")
}

fn build(activity: Activity, rows: &[Row]) -> impl Iterator<Item = Task> + '_ {
    rows.iter().map(move |r| Task {
        id: builtin_task_id(activity, r.slug),
        name: r.name.to_string(),
        category: TaskCategory::new(activity, r.category).expect("builtin category"),
        mode_tag: r.tag,
        object_scope: r.scope.iter().copied().collect(),
        mutating: r.mutating,
        frequency_weight: 1.0,
    })
}

/// The built-in basic task catalog. Exploration tasks come first.
pub fn builtin_catalog(selection: ActivitySelection) -> TaskCatalog {
    let mut tasks = Vec::new();
    if selection.includes(Activity::Exploration) {
        tasks.extend(build(Activity::Exploration, EXPLORATION));
    }
    if selection.includes(Activity::Editing) {
        tasks.extend(build(Activity::Editing, EDITING));
    }
    TaskCatalog::new(tasks).expect("builtin catalog is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{task_similarity, Frequency, TaskFilter};

    /// Hand count of the task bullets after splitting compound actions.
    const BUILTIN_EXPLORATION_TASKS: usize = 23;
    const BUILTIN_EDITING_TASKS: usize = 23;
    const BUILTIN_TOTAL_TASKS: usize = 46;

    #[test]
    fn golden_sizes() {
        assert_eq!(builtin_catalog(ActivitySelection::Exploration).len(), BUILTIN_EXPLORATION_TASKS);
        assert_eq!(builtin_catalog(ActivitySelection::Editing).len(), BUILTIN_EDITING_TASKS);
        assert_eq!(builtin_catalog(ActivitySelection::Both).len(), BUILTIN_TOTAL_TASKS);
    }

    #[test]
    fn category_sets() {
        let ex = builtin_catalog(ActivitySelection::Exploration);
        let mut names = ex.category_names();
        names.sort();
        let mut want = CategoryName::EXPLORATION.to_vec();
        want.sort();
        assert_eq!(names, want);

        let ed = builtin_catalog(ActivitySelection::Editing);
        let mut names = ed.category_names();
        names.sort();
        let mut want = CategoryName::EDITING.to_vec();
        want.sort();
        assert_eq!(names, want);
    }

    #[test]
    fn pan_view_tags() {
        let ex = builtin_catalog(ActivitySelection::Exploration);
        let pan = ex.get("exploration/pan-view").unwrap();
        assert_eq!(pan.mode_tag, InteractionModeTag::mostly(ModeClass::Continuous));
        let ed = builtin_catalog(ActivitySelection::Editing);
        let pan = ed.get("editing/pan-view").unwrap();
        assert_eq!(pan.mode_tag, InteractionModeTag::always(ModeClass::Continuous));
    }

    #[test]
    fn spot_checked_tags() {
        let both = builtin_catalog(ActivitySelection::Both);
        let tag = |id: &str| both.get(id).unwrap().mode_tag;
        assert_eq!(tag("exploration/select-node"), MOSTLY_STEPPED);
        assert_eq!(tag("exploration/deselect-node"), ALWAYS_STEPPED);
        assert_eq!(tag("exploration/rotate-view").mode(), Some(Composite));
        assert_eq!(tag("exploration/apply-node-edge-filter").frequency(), Frequency::VaryingAll);
        assert_eq!(tag("exploration/expand-node"), tag("exploration/collapse-node"));
        assert_eq!(tag("editing/zoom-view"), MOSTLY_STEPPED);
        assert_eq!(tag("editing/change-edge-path"), InteractionModeTag::always(Composite));
        assert_eq!(tag("editing/insert-node-edge"), InteractionModeTag::mostly(Composite));
    }

    #[test]
    fn connect_filter() {
        let ex = builtin_catalog(ActivitySelection::Exploration);
        let connect = ex.filter(&TaskFilter::category(CategoryName::Connect));
        let ids: Vec<_> = connect.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "exploration/show-labels",
                "exploration/hide-labels",
                "exploration/show-node-edge-attributes",
                "exploration/show-metrics-statistics"
            ]
        );
    }

    #[test]
    fn activity_filter_matches_single_catalog() {
        let both = builtin_catalog(ActivitySelection::Both);
        assert_eq!(
            both.filter(&TaskFilter::activity(Activity::Exploration)),
            builtin_catalog(ActivitySelection::Exploration)
        );
        assert_eq!(
            both.filter(&TaskFilter::activity(Activity::Editing)),
            builtin_catalog(ActivitySelection::Editing)
        );
    }

    #[test]
    fn mutating_only_for_data_changing_editing_tasks() {
        let both = builtin_catalog(ActivitySelection::Both);
        for t in &both {
            if t.mutating {
                assert_eq!(t.activity(), Activity::Editing, "{}", t.id);
                assert!(!matches!(t.category.name(), C::Select | C::Navigate), "{}", t.id);
            }
        }
        assert!(!both.get("editing/copy-nodes-edges-subgraphs").unwrap().mutating);
        assert!(both.get("editing/cut-nodes-subgraphs").unwrap().mutating);
    }

    #[test]
    fn select_node_across_activities() {
        let both = builtin_catalog(ActivitySelection::Both);
        let a = both.get("exploration/select-node").unwrap();
        let b = both.get("editing/select-node").unwrap();
        assert!((task_similarity(a, b) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            builtin_catalog(ActivitySelection::Both),
            builtin_catalog(ActivitySelection::Both)
        );
    }
}
