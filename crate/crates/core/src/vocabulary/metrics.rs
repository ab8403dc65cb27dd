use crate::catalog::ModeClass;

use super::{Gesture, Vocabulary};

/// Normalized mismatch count over modality, every dimension assigned in
/// both gestures, object relation kind, contact points and hands.
pub fn gesture_distance(a: &Gesture, b: &Gesture) -> f64 {
    let mut slots = 4usize;
    let mut mismatches = usize::from(a.modality != b.modality)
        + usize::from(a.object_relation.kind != b.object_relation.kind)
        + usize::from(a.multiplicity.points != b.multiplicity.points)
        + usize::from(a.multiplicity.hands != b.multiplicity.hands);
    for (dim, value) in &a.assignment {
        if let Some(other) = b.assignment.get(dim) {
            slots += 1;
            mismatches += usize::from(value != other);
        }
    }
    mismatches as f64 / slots as f64
}

const PER_EXTRA_POINT: f64 = 0.2;
const MAX_EXTRA_POINTS: u32 = 2;
const BIMANUAL: f64 = 0.2;
const MULTI_USER: f64 = 0.2;
const COMPOSITE: f64 = 0.2;
const CONTINUOUS: f64 = 0.1;
const MULTI_STROKE: f64 = 0.2;

/// Physical effort in `[0, 1]`, zero for a single-finger tap.
///
/// | feature                              | increment |
/// |--------------------------------------|-----------|
/// | each contact point beyond the first (at most two) | 0.2 |
/// | two hands                            | 0.2       |
/// | more than one user                   | 0.2       |
/// | composite / continuous mode          | 0.2 / 0.1 |
/// | `linearity=multi-stroke`             | 0.2       |
pub fn gesture_effort(g: &Gesture) -> f64 {
    let m = &g.multiplicity;
    let mut effort = PER_EXTRA_POINT * f64::from(m.points.saturating_sub(1).min(MAX_EXTRA_POINTS));
    if m.hands >= 2 {
        effort += BIMANUAL;
    }
    if m.users > 1 {
        effort += MULTI_USER;
    }
    effort += match g.mode_class() {
        ModeClass::Composite => COMPOSITE,
        ModeClass::Continuous => CONTINUOUS,
        ModeClass::Stepped => 0.0,
    };
    if g.value("linearity") == Some("multi-stroke") {
        effort += MULTI_STROKE;
    }
    effort.clamp(0.0, 1.0)
}

/// The value that undoes `value`: divergent and convergent movement swap,
/// as do placing and lifting a tangible. Everything else (parallel
/// movement and flipping included) is its own inverse.
pub fn inverted_value(value: &str) -> &str {
    match value {
        "divergent" => "convergent",
        "convergent" => "divergent",
        "place" => "lift",
        "lift" => "place",
        other => other,
    }
}

/// The vocabulary member that undoes `g`, if it exists.
pub fn gesture_inverse<'v>(g: &Gesture, vocab: &'v Vocabulary) -> Option<&'v Gesture> {
    let mut inverse = g.clone();
    for value in inverse.assignment.values_mut() {
        let flipped = inverted_value(value);
        if flipped != value {
            *value = flipped.to_string();
        }
    }
    vocab.index_of(&inverse).and_then(|i| vocab.get(i))
}
