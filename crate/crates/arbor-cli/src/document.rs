//! The graph file format: a JSON document with an optional `vertices`
//! array and an `edges` array of `{from, to, weight?}` records. Weights are
//! exact rational strings, `"a"` or `"a/b"`.

use arbor_core::{Digraph, Rational};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    /// Explicit vertex list; fixes matrix row/column order. When absent,
    /// vertices are collected from edge endpoints in first-appearance order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub edges: Vec<EdgeRecord>,
}

/// Parse a weight literal: a sign-free integer, or integer `/`
/// positive-integer. Positivity of the resulting value is enforced later
/// by graph construction.
pub fn parse_weight(text: &str) -> Result<Rational, String> {
    fn parse_digits(part: &str, what: &str) -> Result<BigInt, String> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{what} must be a sign-free integer, got {part:?}"));
        }
        part.parse::<BigInt>().map_err(|e| e.to_string())
    }

    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_digits(text, "weight")?)),
        Some((num, den)) => {
            let num = parse_digits(num, "numerator")?;
            let den = parse_digits(den, "denominator")?;
            if den == BigInt::from(0) {
                return Err("denominator must be positive".into());
            }
            Ok(Rational::new(num, den))
        }
    }
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<GraphDocument, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Input(format!(
                "graph document is not valid (line {}, column {}): {}",
                e.line(),
                e.column(),
                e
            ))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Build the digraph. An explicit vertex list wins; otherwise vertices
    /// are declared implicitly by edge endpoints.
    pub fn to_digraph(&self) -> Result<Digraph, CliError> {
        let vertices: Vec<String> = match &self.vertices {
            Some(v) => v.clone(),
            None => {
                let mut seen = Vec::new();
                for e in &self.edges {
                    for label in [&e.from, &e.to] {
                        if !seen.contains(label) {
                            seen.push(label.clone());
                        }
                    }
                }
                seen
            }
        };

        let mut specs = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let weight = match &e.weight {
                None => Rational::one(),
                Some(text) => parse_weight(text).map_err(|msg| {
                    CliError::Input(format!("edge {} ({} -> {}): {msg}", k + 1, e.from, e.to))
                })?,
            };
            specs.push((e.from.clone(), e.to.clone(), weight));
        }

        Digraph::new(vertices, specs).map_err(|e| CliError::Input(e.to_string()))
    }

    /// Document for a digraph; weights of 1 are omitted.
    pub fn from_digraph(g: &Digraph) -> GraphDocument {
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                from: g.label(e.from).to_string(),
                to: g.label(e.to).to_string(),
                weight: (!e.weight.is_one()).then(|| e.weight.to_string()),
            })
            .collect();
        GraphDocument {
            vertices: Some(g.labels().to_vec()),
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn weight_grammar() {
        assert_eq!(parse_weight("3").unwrap(), rat(3, 1));
        assert_eq!(parse_weight("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_weight("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_weight("0").unwrap(), rat(0, 1));
        for bad in ["", "-3", "+3", "3/-2", "3/0", "a", "1.5", "1/2/3", " 3"] {
            assert!(parse_weight(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn parses_sample_graph_document() {
        let text = r#"{
            "vertices": ["v1", "v2", "v3"],
            "edges": [
                {"from": "v1", "to": "v2"},
                {"from": "v2", "to": "v3"},
                {"from": "v3", "to": "v2"},
                {"from": "v3", "to": "v1"},
                {"from": "v1", "to": "v3"}
            ]
        }"#;
        let doc = GraphDocument::from_json(text).unwrap();
        let g = doc.to_digraph().unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 5);
        assert!(!g.is_weighted());
    }

    #[test]
    fn fractional_weight_parses_into_graph() {
        let text = r#"{"edges": [{"from": "a", "to": "b", "weight": "3/2"}]}"#;
        let g = GraphDocument::from_json(text).unwrap().to_digraph().unwrap();
        assert_eq!(g.edges()[0].weight, rat(3, 2));
    }

    #[test]
    fn zero_weight_is_rejected_by_graph_construction() {
        let text = r#"{"edges": [{"from": "a", "to": "b", "weight": "0"}]}"#;
        let err = GraphDocument::from_json(text)
            .unwrap()
            .to_digraph()
            .unwrap_err();
        assert!(matches!(err, CliError::Input(ref m) if m.contains("positive")));
    }

    #[test]
    fn implicit_vertices_use_first_appearance_order() {
        let text = r#"{"edges": [
            {"from": "c", "to": "a"},
            {"from": "a", "to": "b"}
        ]}"#;
        let g = GraphDocument::from_json(text).unwrap().to_digraph().unwrap();
        assert_eq!(g.labels(), ["c", "a", "b"]);
    }

    #[test]
    fn explicit_vertex_list_wins_over_edge_order() {
        let text = r#"{
            "vertices": ["a", "b", "c"],
            "edges": [{"from": "c", "to": "a"}]
        }"#;
        let g = GraphDocument::from_json(text).unwrap().to_digraph().unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
    }

    #[test]
    fn parse_error_reports_location() {
        let err = GraphDocument::from_json("{\n  \"edges\": [,]\n}").unwrap_err();
        assert!(matches!(err, CliError::Input(ref m) if m.contains("line 2")));
    }

    #[test]
    fn serialize_parse_round_trip_preserves_order() {
        let text = r#"{
            "vertices": ["v1", "v2", "v3"],
            "edges": [
                {"from": "v3", "to": "v1", "weight": "7"},
                {"from": "v1", "to": "v2", "weight": "2/3"},
                {"from": "v2", "to": "v3"}
            ]
        }"#;
        let doc = GraphDocument::from_json(text).unwrap();
        let g = doc.to_digraph().unwrap();
        let doc2 = GraphDocument::from_digraph(&g);
        let g2 = doc2.to_digraph().unwrap();
        assert_eq!(g, g2);
        // and the re-serialized document parses to the same graph again
        let doc3 = GraphDocument::from_json(&doc2.to_json()).unwrap();
        assert_eq!(doc3, doc2);
    }
}
