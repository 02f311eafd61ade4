//! JSON instance files.
//!
//! ```json
//! {"vertices":[{"id":"a","capacity":2}],
//!  "edges":[{"u":"a","v":"b","weight":"1/2"}],
//!  "matching":[["a","b"]]}
//! ```
//! Weights are exact fraction strings (plain integers are accepted on input).
//! `matching` is optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CMatching, CapacitatedGraph, GraphError, Instance};
use crate::instance_gen::{fixtures::fixture, GenError};
use crate::rational::{Frac, Rational};

/// Prefix that addresses a built-in fixture instead of a file.
pub const FIXTURE_PREFIX: &str = "fixtures:";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fixture(#[from] GenError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    pub capacity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub u: String,
    pub v: String,
    pub weight: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(String, String)>>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        let g = &instance.graph;
        InstanceFile {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    capacity: v.declared_capacity as i64,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    u: g.name(e.u).to_string(),
                    v: g.name(e.v).to_string(),
                    weight: Frac(e.weight),
                })
                .collect(),
            matching: instance.matching.as_ref().map(|m| m.named_pairs(g)),
        }
    }

    pub fn into_instance(self) -> Result<Instance, IoError> {
        let vertices: Vec<(&str, i64)> = self.vertices.iter().map(|v| (v.id.as_str(), v.capacity)).collect();
        let edges: Vec<(&str, &str, Rational)> = self
            .edges
            .iter()
            .map(|e| (e.u.as_str(), e.v.as_str(), e.weight.0))
            .collect();
        let graph = CapacitatedGraph::validate(&vertices, &edges).map_err(GraphError::Invalid)?;
        let Some(pairs) = self.matching else {
            return Ok(Instance::new(graph));
        };
        let ids = pairs
            .iter()
            .map(|(a, b)| graph.edge_by_names(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        let m = CMatching::new(&graph, ids)?;
        Ok(Instance::with_matching(graph, m))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    serde_json::from_str::<InstanceFile>(text)?.into_instance()
}

pub fn instance_to_json(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance)).expect("instance serializes")
}

/// Loads `fixtures:<name>` or a JSON file path.
pub fn load_instance(source: &str) -> Result<Instance, IoError> {
    if let Some(name) = source.strip_prefix(FIXTURE_PREFIX) {
        return Ok(fixture(name)?);
    }
    let text = read_text(Path::new(source))?;
    parse_instance(&text)
}

pub(crate) fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}
