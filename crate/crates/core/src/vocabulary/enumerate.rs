use indexmap::IndexMap;

use super::{
    Constraint, DeviceMultiplicity, Dimension, Gesture, Modality, ObjectRelation, RelationKind,
    TargetClass, Vocabulary, VocabularyError, VocabularySpec,
};
use crate::exec::Execution;

/// Upper bound on the raw product size of a single modality.
const MAX_PRODUCT: u128 = 50_000_000;

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub vocabulary: Vocabulary,
    /// The unconstrained product was non-empty but every tuple violated a constraint.
    pub eliminated_everything: bool,
}

/// Predicate with its slot resolved against one modality's dimension list.
#[derive(Debug, Clone, Copy)]
enum Test {
    Dim { position: usize, value: usize },
    Modality(bool),
    Points(u32),
    Hands(u8),
    Users(u32),
    Relation(RelationKind),
    Target(Option<TargetClass>),
}

impl Test {
    fn compile(slot: &str, value: &str, modality: Modality, dims: &[&Dimension]) -> Option<Test> {
        Some(match slot {
            "modality" => Test::Modality(modality.as_str() == value),
            "points" => Test::Points(value.parse().ok()?),
            "hands" => Test::Hands(value.parse().ok()?),
            "users" => Test::Users(value.parse().ok()?),
            "object-relation" => Test::Relation(RelationKind::parse(value)?),
            "target" => Test::Target(TargetClass::parse(value)),
            name => {
                let position = dims.iter().position(|d| d.name == name)?;
                Test::Dim {
                    position,
                    value: dims[position].value_index(value)?,
                }
            }
        })
    }

    fn holds(&self, values: &[usize], rel: &ObjectRelation, mult: &DeviceMultiplicity) -> bool {
        match *self {
            Test::Dim { position, value } => values[position] == value,
            Test::Modality(b) => b,
            Test::Points(p) => mult.points == p,
            Test::Hands(h) => mult.hands == h,
            Test::Users(u) => mult.users == u,
            Test::Relation(k) => rel.kind == k,
            Test::Target(t) => rel.target == t,
        }
    }
}

fn compile(constraints: &[Constraint], modality: Modality, dims: &[&Dimension]) -> Vec<(Test, Test)> {
    // Constraints whose dimension slots do not apply to this modality are skipped.
    constraints
        .iter()
        .filter_map(|c| {
            let a = Test::compile(&c.condition.dimension, &c.condition.value, modality, dims)?;
            let b = Test::compile(&c.consequence.dimension, &c.consequence.value, modality, dims)?;
            Some((a, b))
        })
        .collect()
}

fn check_inputs(
    spec: &VocabularySpec,
    relations: &[ObjectRelation],
    multiplicities: &[DeviceMultiplicity],
) -> Result<(), VocabularyError> {
    spec.validate()?;
    for r in relations {
        r.check()?;
    }
    for m in multiplicities {
        m.check()?;
    }
    Ok(())
}

/// Size of the unconstrained product, summed over the spec's modalities.
pub fn product_size(
    spec: &VocabularySpec,
    relations: &[ObjectRelation],
    multiplicities: &[DeviceMultiplicity],
) -> u128 {
    spec.modalities()
        .into_iter()
        .map(|m| {
            spec.dimensions_for(m)
                .map(|d| d.values.len() as u128)
                .product::<u128>()
                * relations.len() as u128
                * multiplicities.len() as u128
        })
        .sum()
}

pub fn enumerate_vocabulary(
    spec: &VocabularySpec,
    relations: &[ObjectRelation],
    multiplicities: &[DeviceMultiplicity],
) -> Result<Enumeration, VocabularyError> {
    enumerate_vocabulary_with(spec, relations, multiplicities, Execution::default())
}

/// Enumerates the constrained product. Gestures are ordered by modality
/// (touch, pen, tangible), then by dimension values lexicographically in
/// dimension order, then by object relation and multiplicity in list order.
pub fn enumerate_vocabulary_with(
    spec: &VocabularySpec,
    relations: &[ObjectRelation],
    multiplicities: &[DeviceMultiplicity],
    exec: Execution,
) -> Result<Enumeration, VocabularyError> {
    check_inputs(spec, relations, multiplicities)?;
    let mut gestures = Vec::new();
    let mut raw_total: u128 = 0;
    for modality in spec.modalities() {
        let dims: Vec<&Dimension> = spec.dimensions_for(modality).collect();
        let radices: Vec<usize> = dims.iter().map(|d| d.values.len()).collect();
        let total = radices.iter().map(|&r| r as u128).product::<u128>()
            * relations.len() as u128
            * multiplicities.len() as u128;
        if total > MAX_PRODUCT {
            return Err(VocabularyError::InvalidSpec(format!(
                "{modality} product has {total} tuples (limit {MAX_PRODUCT})"
            )));
        }
        raw_total += total;
        let rules = compile(&spec.constraints, modality, &dims);
        let nm = multiplicities.len();
        let nr = relations.len();

        let found = exec.filter_map_range(total as usize, |index| {
            let mut rest = index;
            let mult = &multiplicities[rest % nm];
            rest /= nm;
            let rel = &relations[rest % nr];
            rest /= nr;
            let mut values = vec![0usize; radices.len()];
            for (slot, &radix) in values.iter_mut().zip(&radices).rev() {
                *slot = rest % radix;
                rest /= radix;
            }
            let ok = rules
                .iter()
                .all(|(a, b)| !a.holds(&values, rel, mult) || b.holds(&values, rel, mult));
            ok.then(|| Gesture {
                modality,
                assignment: dims
                    .iter()
                    .zip(&values)
                    .map(|(d, &v)| (d.name.clone(), d.values[v].clone()))
                    .collect::<IndexMap<_, _>>(),
                object_relation: *rel,
                multiplicity: *mult,
            })
        });
        gestures.extend(found);
    }
    let vocabulary = Vocabulary::new(gestures)?;
    Ok(Enumeration {
        eliminated_everything: raw_total > 0 && vocabulary.is_empty(),
        vocabulary,
    })
}
