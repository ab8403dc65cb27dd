//! Run configuration file and the instance it describes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gesture_mapping::catalog::{builtin_catalog, filter_tasks, load_catalog_str, Activity, ActivitySelection, TaskFilter};
use gesture_mapping::criteria::{load_familiarity, Criterion, CriterionContext, Normalization};
use gesture_mapping::optimizer::SolverConfig;
use gesture_mapping::vocabulary::{
    builtin_spec, builtin_spec_all, default_multiplicities, default_object_relations, load_spec_str, Modality,
    SpecDocument,
};
use gesture_mapping::{TaskCatalog, WeightVector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Table,
    Structured,
}

/// Catalog and spec entries are file paths (relative to the config file)
/// or `builtin:<name>`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub catalog: Option<String>,
    pub spec: Option<String>,
    pub weights: Option<String>,
    pub familiarity: Option<String>,
    pub activity: Option<Activity>,
    pub criteria: Option<Vec<String>>,
    pub normalization: Normalization,
    pub solver: SolverConfig,
    pub format: Option<Format>,
    #[serde(skip)]
    pub base: PathBuf,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        let mut config: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
        config.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(config)
    }

    fn resolve(&self, entry: &str) -> PathBuf {
        self.base.join(entry)
    }

    pub fn catalog(&self) -> Result<TaskCatalog> {
        let entry = self.catalog.as_deref().unwrap_or("builtin:both");
        let catalog = match entry.strip_prefix("builtin:") {
            Some(name) => builtin_catalog(match name {
                "exploration" => ActivitySelection::Exploration,
                "editing" => ActivitySelection::Editing,
                "both" => ActivitySelection::Both,
                other => bail!("unknown builtin catalog `{other}` (expected exploration, editing or both)"),
            }),
            None => {
                let path = self.resolve(entry);
                load_catalog_str(&read(&path)?).with_context(|| format!("invalid catalog {}", path.display()))?
            }
        };
        Ok(match self.activity {
            Some(a) => filter_tasks(&catalog, &TaskFilter::activity(a)),
            None => catalog,
        })
    }

    pub fn spec(&self) -> Result<SpecDocument> {
        let entry = self.spec.as_deref().context("config has no `spec` entry")?;
        match entry.strip_prefix("builtin:") {
            Some(name) => builtin_document(name),
            None => spec_file(&self.resolve(entry)),
        }
    }

    pub fn criteria(&self) -> Result<Vec<Criterion>> {
        let active = match &self.criteria {
            None => Criterion::all_builtin(),
            Some(names) => names.iter().map(|n| Criterion::named(n)).collect(),
        };
        if active.is_empty() {
            bail!("the active criteria list is empty");
        }
        Ok(active)
    }

    pub fn weights(&self, active: &[Criterion]) -> Result<WeightVector> {
        match &self.weights {
            None => Ok(WeightVector::uniform(active, 1.0)?),
            Some(entry) => {
                let path = self.resolve(entry);
                WeightVector::from_json(&read(&path)?).with_context(|| format!("invalid weights {}", path.display()))
            }
        }
    }

    pub fn context(&self) -> Result<CriterionContext> {
        let catalog = self.catalog()?;
        let vocabulary = self.spec()?.vocabulary()?;
        let mut ctx = CriterionContext::new(catalog, vocabulary).with_execution(self.solver.execution());
        if let Some(entry) = &self.familiarity {
            let path = self.resolve(entry);
            let entries =
                load_familiarity(read(&path)?.as_bytes()).with_context(|| format!("invalid familiarity table {}", path.display()))?;
            ctx = ctx.with_familiarity(entries)?;
        }
        Ok(ctx)
    }
}

pub fn builtin_document(name: &str) -> Result<SpecDocument> {
    let spec = match name {
        "all" => builtin_spec_all(),
        other => builtin_spec(
            Modality::parse(other).with_context(|| format!("unknown builtin spec `{other}` (expected touch, pen, tangible or all)"))?,
        ),
    };
    Ok(SpecDocument::new(spec, default_object_relations(), default_multiplicities()))
}

pub fn spec_file(path: &Path) -> Result<SpecDocument> {
    load_spec_str(&read(path)?).with_context(|| format!("invalid spec {}", path.display()))
}
