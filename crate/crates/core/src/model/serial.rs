//! Document representation of edges: a plain edge is the target name, a
//! decision edge is a one-entry object `{"<outcome>": "<target>"}`.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ActivityId, Edge, Outcome};

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.outcome {
            None => self.target.serialize(s),
            Some(outcome) => {
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry(outcome, &self.target)?;
                map.end()
            }
        }
    }
}

struct EdgeVisitor;

impl<'de> Visitor<'de> for EdgeVisitor {
    type Value = Edge;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an activity name or a single `{outcome: target}` pair")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Edge, E> {
        ActivityId::new(v).map(Edge::to).map_err(E::custom)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Edge, A::Error> {
        let (outcome, target): (Outcome, ActivityId) = map
            .next_entry()?
            .ok_or_else(|| de::Error::custom("empty outcome pair"))?;
        if map.next_key::<de::IgnoredAny>()?.is_some() {
            return Err(de::Error::custom(
                "outcome pair must contain exactly one entry",
            ));
        }
        Ok(Edge::on(outcome, target))
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Edge, D::Error> {
        d.deserialize_any(EdgeVisitor)
    }
}

#[cfg(test)]
mod tests {
    use crate::model::{ActivityKind, Configuration};

    #[test]
    fn parses_decision_pairs() {
        let doc = r#"{
            "id": "X",
            "entry": "D",
            "activities": [
                {"id": "D", "kind": "Decision", "successors": [{"yes": "E"}, {"no": "E"}]},
                {"id": "E", "kind": "Final", "successors": []}
            ]
        }"#;
        let cfg = Configuration::from_json(doc).unwrap();
        assert_eq!(cfg.activities[0].kind, ActivityKind::Decision);
        assert_eq!(
            cfg.activities[0].successors[1].outcome.as_ref().unwrap(),
            "no"
        );
        assert!(cfg.validate().is_empty());
        let again = Configuration::from_json(&cfg.to_json()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_malformed_pairs() {
        let doc = r#"{"id": "X", "entry": "D", "activities": [
            {"id": "D", "kind": "Decision", "successors": [{"a": "E", "b": "E"}]}
        ]}"#;
        let err = Configuration::from_json(doc).unwrap_err();
        assert!(err.to_string().contains("exactly one entry"), "{err}");
        assert!(err.line() > 0);

        let doc = r#"{"id": "X", "entry": "bad name", "activities": []}"#;
        assert!(Configuration::from_json(doc).is_err());
    }
}
