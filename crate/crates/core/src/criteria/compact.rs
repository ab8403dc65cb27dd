use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::exec::Execution;
use crate::vocabulary::Vocabulary;

const ABSENT: u32 = u32::MAX;
const FIXED: usize = 4;

/// Integer-coded gestures: modality, relation kind, points, hands, then one
/// interned value per dimension seen anywhere in the vocabulary.
/// [`CompactGestures::distance`] reproduces `gesture_distance` bit for bit.
#[derive(Debug)]
pub(crate) struct CompactGestures {
    codes: Vec<u32>,
    width: usize,
    len: usize,
}

impl CompactGestures {
    pub(crate) fn new(vocab: &Vocabulary) -> Self {
        let mut dims: HashMap<&str, (usize, HashMap<&str, u32>)> = HashMap::new();
        for g in vocab {
            for (name, value) in &g.assignment {
                let next = dims.len();
                let (_, values) = dims.entry(name).or_insert_with(|| (next, HashMap::new()));
                let id = values.len() as u32;
                values.entry(value).or_insert(id);
            }
        }
        let width = FIXED + dims.len();
        let mut codes = vec![ABSENT; width * vocab.len()];
        for (row, g) in codes.chunks_mut(width).zip(vocab) {
            row[0] = g.modality as u32;
            row[1] = g.object_relation.kind as u32;
            row[2] = g.multiplicity.points;
            row[3] = u32::from(g.multiplicity.hands);
            for (name, value) in &g.assignment {
                let (position, values) = &dims[name.as_str()];
                row[FIXED + position] = values[value.as_str()];
            }
        }
        CompactGestures {
            codes,
            width,
            len: vocab.len(),
        }
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.codes[i * self.width..(i + 1) * self.width]
    }

    pub(crate) fn distance(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.row(i), self.row(j));
        let mut slots = FIXED;
        let mut mismatches = a[..FIXED].iter().zip(&b[..FIXED]).filter(|(x, y)| x != y).count();
        for (&x, &y) in a[FIXED..].iter().zip(&b[FIXED..]) {
            if x != ABSENT && y != ABSENT {
                slots += 1;
                mismatches += usize::from(x != y);
            }
        }
        mismatches as f64 / slots as f64
    }

    /// Stops early once some pair reaches distance 1.
    pub(crate) fn max_pairwise_distance(&self, exec: Execution) -> f64 {
        if self.len < 2 {
            return 0.0;
        }
        let saturated = AtomicBool::new(false);
        exec.max_range(self.len, |i| {
            let mut best = 0.0f64;
            for j in i + 1..self.len {
                if saturated.load(Ordering::Relaxed) {
                    return 1.0;
                }
                best = best.max(self.distance(i, j));
                if best >= 1.0 {
                    saturated.store(true, Ordering::Relaxed);
                    return 1.0;
                }
            }
            best
        })
        .unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocabulary::{
        builtin_spec_all, enumerate_vocabulary, gesture_distance, DeviceMultiplicity, ObjectRelation,
        RelationKind, TargetClass,
    };

    #[test]
    fn matches_reference_distance() {
        let rels = [ObjectRelation::NONE, ObjectRelation::on(RelationKind::Crossed, TargetClass::Edge)];
        let mults = [DeviceMultiplicity::SINGLE, DeviceMultiplicity::new(2, 2, 1)];
        let vocab = enumerate_vocabulary(&builtin_spec_all(), &rels, &mults).unwrap().vocabulary;
        let compact = CompactGestures::new(&vocab);
        let n = vocab.len();
        for i in (0..n).step_by(37) {
            for j in (0..n).step_by(41) {
                let reference = gesture_distance(&vocab.gestures()[i], &vocab.gestures()[j]);
                assert_eq!(compact.distance(i, j).to_bits(), reference.to_bits());
            }
        }
    }

    #[test]
    fn max_distance_modes_agree() {
        let vocab = enumerate_vocabulary(&builtin_spec_all(), &[ObjectRelation::NONE], &[DeviceMultiplicity::SINGLE])
            .unwrap()
            .vocabulary;
        let compact = CompactGestures::new(&vocab);
        assert_eq!(
            compact.max_pairwise_distance(Execution::Sequential),
            compact.max_pairwise_distance(Execution::Parallel)
        );
    }
}
