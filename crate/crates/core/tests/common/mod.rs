//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use gesture_mapping::catalog::{
    Activity, CategoryName, Frequency, InteractionModeTag, ModeClass, ObjectClass, Task, TaskCatalog, TaskCategory,
};
use gesture_mapping::criteria::{Criterion, CriterionKind, FamiliarityEntry, WeightVector};
use gesture_mapping::vocabulary::{
    builtin_spec_all, enumerate_vocabulary, gesture_inverse, DeviceMultiplicity, Gesture, ObjectRelation, RelationKind,
    TargetClass, Vocabulary,
};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

const OBJECTS: [ObjectClass; 8] = [
    ObjectClass::Node,
    ObjectClass::Edge,
    ObjectClass::Subgraph,
    ObjectClass::Label,
    ObjectClass::Attribute,
    ObjectClass::Group,
    ObjectClass::View,
    ObjectClass::Document,
];
const MODES: [ModeClass; 3] = [ModeClass::Stepped, ModeClass::Continuous, ModeClass::Composite];

pub fn random_task(rng: &mut Rng8, id: String) -> Task {
    let activity = if rng.gen_bool(0.5) { Activity::Exploration } else { Activity::Editing };
    let names = match activity {
        Activity::Exploration => CategoryName::EXPLORATION,
        Activity::Editing => CategoryName::EDITING,
    };
    let mode = *MODES.choose(rng).unwrap();
    let mode_tag = match rng.gen_range(0..3) {
        0 => InteractionModeTag::always(mode),
        1 => InteractionModeTag::mostly(mode),
        _ => InteractionModeTag::new(Frequency::VaryingAll, None).unwrap(),
    };
    let scope_len = rng.gen_range(1..=3);
    let object_scope = OBJECTS.choose_multiple(rng, scope_len).copied().collect();
    Task {
        name: id.clone(),
        id,
        category: TaskCategory::new(activity, *names.choose(rng).unwrap()).unwrap(),
        mode_tag,
        object_scope,
        mutating: rng.gen_bool(0.5),
        frequency_weight: if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) },
    }
}

pub fn random_catalog(rng: &mut Rng8, k: usize) -> TaskCatalog {
    TaskCatalog::new((0..k).map(|i| random_task(rng, format!("t{i}"))).collect()).unwrap()
}

/// Built-in gestures over a few relations and multiplicities.
pub fn gesture_pool() -> &'static Vocabulary {
    static POOL: OnceLock<Vocabulary> = OnceLock::new();
    POOL.get_or_init(|| {
        let rels = [
            ObjectRelation::NONE,
            ObjectRelation::on(RelationKind::StartedOn, TargetClass::Node),
            ObjectRelation::on(RelationKind::Crossed, TargetClass::Label),
        ];
        let mults = [
            DeviceMultiplicity::SINGLE,
            DeviceMultiplicity::new(2, 1, 1),
            DeviceMultiplicity::new(2, 2, 1),
            DeviceMultiplicity::new(1, 1, 2),
        ];
        enumerate_vocabulary(&builtin_spec_all(), &rels, &mults).unwrap().vocabulary
    })
}

/// `l` distinct built-in gestures; about half of the draws are followed
/// by their inverse when one exists.
pub fn random_vocabulary(rng: &mut Rng8, l: usize) -> Vocabulary {
    let pool = gesture_pool();
    let mut picked: Vec<Gesture> = Vec::with_capacity(l);
    while picked.len() < l {
        let g = &pool.gestures()[rng.gen_range(0..pool.len())];
        if !picked.contains(g) {
            picked.push(g.clone());
        }
        if picked.len() < l && rng.gen_bool(0.5) {
            if let Some(inv) = gesture_inverse(g, pool) {
                if !picked.contains(inv) {
                    picked.push(inv.clone());
                }
            }
        }
    }
    Vocabulary::new(picked).unwrap()
}

pub fn random_familiarity(rng: &mut Rng8, catalog: &TaskCatalog, vocab: &Vocabulary) -> Vec<FamiliarityEntry> {
    let mut out = Vec::new();
    for t in catalog {
        for g in vocab {
            if rng.gen_bool(0.4) {
                out.push(FamiliarityEntry {
                    task: t.id.clone(),
                    gesture_fingerprint: g.fingerprint(),
                    score: rng.gen_range(0.0..=1.0),
                });
            }
        }
    }
    out
}

/// Non-empty random subset of the built-in criteria in canonical order.
pub fn random_criteria(rng: &mut Rng8, separable_only: bool) -> Vec<Criterion> {
    let pool: Vec<CriterionKind> = CriterionKind::BUILTIN
        .into_iter()
        .filter(|k| !separable_only || k.separable())
        .collect();
    loop {
        let chosen: Vec<Criterion> = pool
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .map(|&k| Criterion::builtin(k))
            .collect();
        if !chosen.is_empty() {
            return chosen;
        }
    }
}

pub fn random_weights(rng: &mut Rng8, active: &[Criterion]) -> WeightVector {
    WeightVector::new(active.iter().map(|c| {
        let alpha = match rng.gen_range(0..5) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0.0..=1.0),
        };
        (c.name().to_string(), alpha)
    }))
    .unwrap()
}
