//! The JSON graph file: vertex names, edges with optional rational
//! distances, and free-form metadata.

use std::collections::BTreeMap;

use linfdim::scalar::{format_rational, parse_rational};
use linfdim::{Graph, MetricGraph, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    /// `"p/q"`, an integer string, or a JSON integer.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational_text")]
    pub d: Option<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Edges drawn in red by `--dot`, e.g. a certificate matching.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub highlight: Vec<(String, String)>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

mod rational_text {
    use super::*;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Rational>, D::Error> {
        match Value::deserialize(de)? {
            Value::Null => Ok(None),
            Value::String(t) => parse_rational(&t)
                .map(Some)
                .ok_or_else(|| de::Error::custom(format!("bad rational {t:?}"))),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Some(Rational::from_integer(i.into())))
                } else if let Some(u) = n.as_u64() {
                    Ok(Some(Rational::from_integer(u.into())))
                } else {
                    Err(de::Error::custom(format!("distance {n} is not an integer; write it as \"p/q\"")))
                }
            }
            other => Err(de::Error::custom(format!("bad distance {other}"))),
        }
    }
}

/// A parsed file: the graph, its distances if it has any, and metadata.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub graph: Graph,
    pub metric: Option<MetricGraph<Rational>>,
    pub metadata: Metadata,
}

impl Loaded {
    pub fn require_metric(&self) -> Result<&MetricGraph<Rational>, CliError> {
        self.metric
            .as_ref()
            .ok_or_else(|| CliError::Input("this command needs edge distances".into()))
    }
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph files serialize");
        s.push('\n');
        s
    }

    /// Builds the graph; with `validate`, distances must form a distance
    /// function.
    pub fn load(&self, validate: bool) -> Result<Loaded, CliError> {
        let pairs: Vec<(&str, &str)> = self.edges.iter().map(|e| (e.u.as_str(), e.v.as_str())).collect();
        let graph = Graph::from_names(&self.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &pairs)?;
        let with_d = self.edges.iter().filter(|e| e.d.is_some()).count();
        let metric = if with_d == 0 {
            None
        } else if with_d < self.edges.len() {
            return Err(CliError::Input(format!(
                "{with_d} of {} edges carry a distance; either all or none must",
                self.edges.len()
            )));
        } else {
            let d: Vec<Rational> = self.edges.iter().map(|e| e.d.clone().unwrap()).collect();
            Some(if validate {
                MetricGraph::new(graph.clone(), d)?
            } else {
                MetricGraph::new_unchecked(graph.clone(), d)
            })
        };
        Ok(Loaded {
            graph,
            metric,
            metadata: self.metadata.clone().unwrap_or_default(),
        })
    }

    pub fn from_graph(g: &Graph, d: Option<&[Rational]>, metadata: Option<Metadata>) -> Self {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| EdgeRecord {
                u: g.name(u).to_string(),
                v: g.name(v).to_string(),
                d: d.map(|d| d[e].clone()),
            })
            .collect();
        GraphFile {
            vertices: g.names().to_vec(),
            edges,
            metadata,
        }
    }

    pub fn from_metric(mg: &MetricGraph<Rational>, metadata: Option<Metadata>) -> Self {
        Self::from_graph(mg.graph(), Some(mg.distances()), metadata)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_distances() {
        let text = r#"{"vertices": ["a", "b", "c"],
            "edges": [{"u": "a", "v": "b", "d": 1}, {"u": "b", "v": "c", "d": "1/2"}, {"u": "a", "v": "c", "d": "3/2"}],
            "metadata": {"family": "triangle", "note": 5}}"#;
        let f = GraphFile::parse(text).unwrap();
        let l = f.load(true).unwrap();
        assert_eq!(l.metric.unwrap().d(1), &Rational::new(1.into(), 2.into()));
        assert_eq!(l.metadata.family.as_deref(), Some("triangle"));
        assert_eq!(l.metadata.extra["note"], 5);
    }

    #[test]
    fn rejections() {
        let partial = r#"{"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "d": 1}, {"u": "b", "v": "c"}]}"#;
        assert!(matches!(GraphFile::parse(partial).unwrap().load(true), Err(CliError::Input(_))));
        let bad = r#"{"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "d": 5}, {"u": "b", "v": "c", "d": 1}, {"u": "a", "v": "c", "d": 1}]}"#;
        let f = GraphFile::parse(bad).unwrap();
        assert!(f.load(true).is_err());
        assert!(f.load(false).is_ok());
        assert!(GraphFile::parse(r#"{"vertices": ["a"], "edges": [{"u": "a", "v": "z"}]}"#).unwrap().load(true).is_err());
        assert!(GraphFile::parse(r#"{"vertices": [], "edges": [], "extra": 1}"#).is_err());
        assert!(GraphFile::parse(r#"{"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "d": 0.5}]}"#).is_err());
    }
}
