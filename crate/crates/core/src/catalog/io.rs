use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{
    Activity, CatalogError, CategoryName, InteractionModeTag, ObjectClass, Task, TaskCatalog,
    TaskCategory,
};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDocument {
    tasks: Vec<TaskRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskRecord {
    id: String,
    name: String,
    activity: Activity,
    category: String,
    mode: InteractionModeTag,
    object_scope: Vec<ObjectClass>,
    mutating: bool,
    #[serde(default = "default_weight")]
    frequency_weight: f64,
}

fn default_weight() -> f64 {
    1.0
}

impl TaskRecord {
    fn into_task(self) -> Result<Task, CatalogError> {
        let category = CategoryName::parse(&self.category)
            .and_then(|name| TaskCategory::new(self.activity, name))
            .ok_or_else(|| CatalogError::UnknownCategory {
                task: self.id.clone(),
                activity: self.activity,
                category: self.category.clone(),
            })?;
        Ok(Task {
            id: self.id,
            name: self.name,
            category,
            mode_tag: self.mode,
            object_scope: self.object_scope.into_iter().collect(),
            mutating: self.mutating,
            frequency_weight: self.frequency_weight,
        })
    }
}

pub(crate) fn parse_error(e: serde_json::Error) -> CatalogError {
    CatalogError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn load_catalog_str(text: &str) -> Result<TaskCatalog, CatalogError> {
    let doc: CatalogDocument = serde_json::from_str(text).map_err(parse_error)?;
    let tasks = doc
        .tasks
        .into_iter()
        .map(TaskRecord::into_task)
        .collect::<Result<Vec<_>, _>>()?;
    TaskCatalog::new(tasks)
}

/// Reads a JSON catalog document (`{"tasks": [...]}`).
pub fn load_catalog<R: Read>(mut source: R) -> Result<TaskCatalog, CatalogError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    load_catalog_str(&text)
}

pub fn catalog_to_json(catalog: &TaskCatalog) -> String {
    let doc = CatalogDocument {
        tasks: catalog
            .iter()
            .map(|t| TaskRecord {
                id: t.id.clone(),
                name: t.name.clone(),
                activity: t.activity(),
                category: t.category.name().as_str().to_string(),
                mode: t.mode_tag,
                object_scope: t.object_scope.iter().copied().collect(),
                mutating: t.mutating,
                frequency_weight: t.frequency_weight,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, ActivitySelection};

    #[test]
    fn empty_document() {
        let cat = load_catalog_str(r#"{"tasks": []}"#).unwrap();
        assert!(cat.is_empty());
    }

    #[test]
    fn duplicate_id() {
        let doc = r#"{"tasks": [
            {"id": "select-node", "name": "Select node", "activity": "exploration", "category": "select",
             "mode": {"frequency": "mostly", "mode": "stepped"}, "object_scope": ["node"], "mutating": false},
            {"id": "select-node", "name": "Select node", "activity": "editing", "category": "select",
             "mode": {"frequency": "mostly", "mode": "stepped"}, "object_scope": ["node"], "mutating": false}
        ]}"#;
        let err = load_catalog_str(doc).unwrap_err();
        assert!(matches!(err, CatalogError::DuplicateId(ref id) if id == "select-node"), "{err}");
    }

    #[test]
    fn unknown_category() {
        let doc = r#"{"tasks": [
            {"id": "x", "name": "X", "activity": "exploration", "category": "navigate",
             "mode": {"frequency": "always", "mode": "stepped"}, "object_scope": ["view"], "mutating": false}
        ]}"#;
        let err = load_catalog_str(doc).unwrap_err();
        assert!(matches!(err, CatalogError::UnknownCategory { .. }), "{err}");
    }

    #[test]
    fn parse_error_has_locus() {
        let doc = "{\"tasks\": [\n  {\"id\": \"x\", \"name\": 3}\n]}";
        match load_catalog_str(doc).unwrap_err() {
            CatalogError::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("invalid type"), "{message}");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn varying_with_mode_is_rejected() {
        let doc = r#"{"tasks": [
            {"id": "x", "name": "X", "activity": "exploration", "category": "filter",
             "mode": {"frequency": "varying-all", "mode": "stepped"}, "object_scope": ["node"], "mutating": false}
        ]}"#;
        assert!(matches!(load_catalog_str(doc), Err(CatalogError::Parse { .. })));
    }

    #[test]
    fn weight_defaults_to_one() {
        let doc = r#"{"tasks": [
            {"id": "x", "name": "X", "activity": "exploration", "category": "filter",
             "mode": {"frequency": "varying-all"}, "object_scope": ["node"], "mutating": false}
        ]}"#;
        assert_eq!(load_catalog_str(doc).unwrap().tasks()[0].frequency_weight, 1.0);
    }

    #[test]
    fn builtin_round_trip() {
        for sel in [ActivitySelection::Exploration, ActivitySelection::Editing, ActivitySelection::Both] {
            let cat = builtin_catalog(sel);
            let back = load_catalog(catalog_to_json(&cat).as_bytes()).unwrap();
            assert_eq!(back, cat);
        }
    }
}
