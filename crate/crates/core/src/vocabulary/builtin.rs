use super::{
    Constraint, DeviceMultiplicity, Dimension, Modality, ObjectRelation, Predicate, RelationKind,
    TargetClass, VocabularySpec,
};

use Modality::{Pen, Tangible, Touch};

fn dimensions() -> Vec<Dimension> {
    vec![
        Dimension::new("continuity", ["discrete", "continuous"], [Touch, Pen]),
        Dimension::new("duration", ["short", "long"], [Touch, Pen]),
        Dimension::new(
            "nature-of-motion",
            ["physical", "symbolic", "metaphorical", "abstract"],
            [Touch, Pen],
        ),
        Dimension::new(
            "linearity",
            ["none", "straight", "direction-changes", "multi-stroke"],
            [Touch, Pen],
        ),
        Dimension::new(
            "relation-of-movement",
            ["none", "parallel", "divergent", "convergent"],
            [Touch],
        ),
        Dimension::new("form", ["thin-bendable", "thick-rigid"], [Tangible]),
        Dimension::new("material", ["wood", "plastic", "acrylic"], [Tangible]),
        Dimension::new("role", ["function", "parameter", "data"], [Tangible]),
        Dimension::new(
            "single-action",
            ["place", "lift", "translate", "rotate", "tilt", "flip", "shake"],
            [Tangible],
        ),
        Dimension::new("tangible-type", ["none", "same", "different"], [Tangible]),
        Dimension::new("coupling", ["none", "decoupled", "coupled"], [Tangible]),
        Dimension::new("composition", ["single", "sequence"], [Touch, Pen, Tangible]),
    ]
}

fn iff(a: (&str, &str), b: (&str, &str)) -> [Constraint; 2] {
    [
        Constraint::implies(Predicate::new(a.0, a.1), Predicate::new(b.0, b.1)),
        Constraint::implies(Predicate::new(b.0, b.1), Predicate::new(a.0, a.1)),
    ]
}

fn constraints() -> Vec<Constraint> {
    let mut out = Vec::new();
    // Linearity only describes continuous movement.
    out.extend(iff(("continuity", "discrete"), ("linearity", "none")));
    // Relation of movement needs two or more contact points.
    out.extend(iff(("points", "1"), ("relation-of-movement", "none")));
    // A pen is a single pointer.
    out.push(Constraint::implies(
        Predicate::new("modality", "pen"),
        Predicate::new("points", "1"),
    ));
    // Combinations of tangibles need two or more tangibles.
    out.extend(iff(("points", "1"), ("tangible-type", "none")));
    out.extend(iff(("points", "1"), ("coupling", "none")));
    out
}

/// All built-in dimensions for touch, pen and tangible input with their
/// baseline constraints.
pub fn builtin_spec_all() -> VocabularySpec {
    VocabularySpec::new(dimensions(), constraints()).expect("builtin spec is valid")
}

/// Built-in spec restricted to one modality.
pub fn builtin_spec(modality: Modality) -> VocabularySpec {
    let dimensions: Vec<Dimension> = dimensions()
        .into_iter()
        .filter(|d| d.applies_to(modality))
        .map(|mut d| {
            d.modalities = [modality].into();
            d
        })
        .collect();
    let known = |p: &Predicate| {
        super::RESERVED_SLOTS.contains(&p.dimension.as_str())
            || dimensions.iter().any(|d| d.name == p.dimension)
    };
    let constraints = constraints()
        .into_iter()
        .filter(|c| known(&c.condition) && known(&c.consequence))
        .collect();
    VocabularySpec::new(dimensions, constraints).expect("builtin spec is valid")
}

/// `none` plus the four relation kinds, each targeting a node.
pub fn default_object_relations() -> Vec<ObjectRelation> {
    RelationKind::ALL
        .into_iter()
        .map(|kind| match kind {
            RelationKind::None => ObjectRelation::NONE,
            kind => ObjectRelation::on(kind, TargetClass::Node),
        })
        .collect()
}

/// 1 to 3 points, 1 or 2 hands, 1 or 2 users; bimanual needs two points.
pub fn default_multiplicities() -> Vec<DeviceMultiplicity> {
    let mut out = Vec::new();
    for points in 1..=3 {
        for hands in 1..=2u8 {
            for users in 1..=2 {
                let m = DeviceMultiplicity::new(points, hands, users);
                if m.check().is_ok() {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn touch_has_continuity() {
        let spec = builtin_spec(Touch);
        let d = spec.dimension("continuity").unwrap();
        assert_eq!(d.values, ["discrete", "continuous"]);
        assert!(spec.dimension("form").is_none());
    }

    #[test]
    fn tangible_actions() {
        let spec = builtin_spec(Tangible);
        let d = spec.dimension("single-action").unwrap();
        assert!(d.values.iter().any(|v| v == "flip"));
        assert!(d.values.iter().any(|v| v == "shake"));
    }

    #[test]
    fn pen_is_single_pointer() {
        let spec = builtin_spec(Pen);
        assert!(spec.dimension("relation-of-movement").is_none());
        assert!(spec.constraints.iter().any(|c| c.condition == Predicate::new("modality", "pen")
            && c.consequence == Predicate::new("points", "1")));
    }

    #[test]
    fn default_domains() {
        assert_eq!(default_object_relations().len(), 5);
        assert_eq!(default_multiplicities().len(), 10);
    }
}
