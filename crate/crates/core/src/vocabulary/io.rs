use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{
    default_multiplicities, default_object_relations, enumerate_vocabulary, Constraint,
    validate_gesture, DeviceMultiplicity, Dimension, Enumeration, Gesture, ObjectRelation, Vocabulary,
    VocabularyError, VocabularySpec,
};

/// Spec file contents: the spec plus the object relations and device
/// multiplicities to enumerate over. Missing lists fall back to
/// [`default_object_relations`] and [`default_multiplicities`].
///
/// A non-empty `gestures` list of fingerprints replaces the enumeration:
/// the vocabulary is then exactly those gestures, each checked against
/// the spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub dimensions: Vec<Dimension>,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    #[serde(default = "default_object_relations")]
    pub object_relations: Vec<ObjectRelation>,
    #[serde(default = "default_multiplicities")]
    pub multiplicities: Vec<DeviceMultiplicity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gestures: Vec<String>,
}

impl SpecDocument {
    pub fn new(spec: VocabularySpec, object_relations: Vec<ObjectRelation>, multiplicities: Vec<DeviceMultiplicity>) -> Self {
        SpecDocument {
            dimensions: spec.dimensions,
            constraints: spec.constraints,
            object_relations,
            multiplicities,
            gestures: Vec::new(),
        }
    }

    /// Curated vocabulary of the given gestures.
    pub fn with_gestures<'g>(mut self, gestures: impl IntoIterator<Item = &'g Gesture>) -> Self {
        self.gestures = gestures.into_iter().map(Gesture::fingerprint).collect();
        self
    }

    pub fn spec(&self) -> VocabularySpec {
        VocabularySpec {
            dimensions: self.dimensions.clone(),
            constraints: self.constraints.clone(),
        }
    }

    pub fn enumerate(&self) -> Result<Enumeration, VocabularyError> {
        enumerate_vocabulary(&self.spec(), &self.object_relations, &self.multiplicities)
    }

    /// The curated gesture list if present, the enumeration otherwise.
    pub fn vocabulary(&self) -> Result<Vocabulary, VocabularyError> {
        if self.gestures.is_empty() {
            return Ok(self.enumerate()?.vocabulary);
        }
        let spec = self.spec();
        let gestures = self
            .gestures
            .iter()
            .map(|text| {
                let mut g: Gesture = text.parse()?;
                let violations = validate_gesture(&g, &spec);
                if !violations.is_empty() {
                    return Err(VocabularyError::InvalidGesture {
                        fingerprint: text.clone(),
                        violations: violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
                    });
                }
                g.assignment = spec
                    .dimensions_for(g.modality)
                    .map(|d| (d.name.clone(), g.assignment[&d.name].clone()))
                    .collect();
                Ok(g)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Vocabulary::new(gestures)
    }
}

pub fn load_spec_str(text: &str) -> Result<SpecDocument, VocabularyError> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(|e| VocabularyError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.spec().validate()?;
    for r in &doc.object_relations {
        r.check()?;
    }
    for m in &doc.multiplicities {
        m.check()?;
    }
    if !doc.gestures.is_empty() {
        doc.vocabulary()?;
    }
    Ok(doc)
}

pub fn load_spec<R: Read>(mut source: R) -> Result<SpecDocument, VocabularyError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    load_spec_str(&text)
}

pub fn spec_to_json(doc: &SpecDocument) -> String {
    serde_json::to_string_pretty(doc).expect("spec serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocabulary::builtin_spec_all;

    #[test]
    fn round_trip() {
        let doc = SpecDocument::new(builtin_spec_all(), default_object_relations(), default_multiplicities());
        assert_eq!(load_spec_str(&spec_to_json(&doc)).unwrap(), doc);
    }

    #[test]
    fn defaults_apply() {
        let doc = load_spec_str(r#"{"dimensions": [{"name": "a", "values": ["x", "y"], "modalities": ["touch"]}]}"#).unwrap();
        assert_eq!(doc.object_relations.len(), 5);
        assert_eq!(doc.multiplicities.len(), 10);
    }

    #[test]
    fn constraint_syntax() {
        let doc = load_spec_str(
            r#"{"dimensions": [{"name": "a", "values": ["x", "y"], "modalities": ["touch"]}],
                "constraints": [{"if": {"dimension": "a", "value": "x"}, "then": {"dimension": "points", "value": "1"}}],
                "object_relations": [{"kind": "none"}],
                "multiplicities": [{"points": 1, "hands": 1, "users": 1}, {"points": 2, "hands": 1, "users": 1}]}"#,
        )
        .unwrap();
        assert_eq!(doc.enumerate().unwrap().vocabulary.len(), 3);
    }

    #[test]
    fn curated_gestures() {
        let text = r#"{"dimensions": [{"name": "a", "values": ["x", "y"], "modalities": ["touch"]},
                                      {"name": "b", "values": ["p", "q"], "modalities": ["touch"]}],
                       "gestures": ["touch:b=q,a=y/started-on@node/1p1h1u", "touch:a=x,b=p/none/2p2h1u"]}"#;
        let doc = load_spec_str(text).unwrap();
        let vocab = doc.vocabulary().unwrap();
        assert_eq!(vocab.len(), 2);
        assert_eq!(vocab.gestures()[0].fingerprint(), "touch:a=y,b=q/started-on@node/1p1h1u");
        let round = load_spec_str(&spec_to_json(&doc)).unwrap();
        assert_eq!(round.vocabulary().unwrap(), vocab);

        let bad = text.replace("b=q,a=y", "a=z,b=q");
        assert!(load_spec_str(&bad).unwrap_err().to_string().contains("a=z"));
        let bad = text.replace("/1p1h1u", "/1p2h1u");
        assert!(load_spec_str(&bad).is_err());
    }

    #[test]
    fn errors_name_the_field() {
        let err = load_spec_str(r#"{"dimensions": [{"name": "a", "valuez": ["x"], "modalities": ["touch"]}]}"#).unwrap_err();
        assert!(err.to_string().contains("valuez"), "{err}");
        let err = load_spec_str(
            r#"{"dimensions": [{"name": "a", "values": ["x"], "modalities": ["touch"]}],
                "constraints": [{"if": {"dimension": "b", "value": "x"}, "then": {"dimension": "a", "value": "x"}}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown dimension `b`"), "{err}");
    }
}
