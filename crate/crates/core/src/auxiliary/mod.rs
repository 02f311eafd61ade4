//! Unit-capacity auxiliary graph of a capacitated instance.
//!
//! Every vertex `v` is replaced by `c_v` copies `v#1..v#c_v`. A matched edge
//! `uv` becomes a single matched copy edge between the lowest copies of `u`
//! and `v` not yet used by an earlier matched edge (edge order); an
//! unmatched edge becomes all `c_u * c_v` copy edges. `eta` maps copies back
//! to their originals. Removing an exposed original vertex from the instance
//! corresponds exactly to removing its copies here.

mod traceback;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CMatching, CapacitatedGraph, Edge, EdgeId, GraphError, Instance, Vertex, VertexId};
use crate::rational::Frac;
use crate::walks::{Walk, WalkError};

pub use traceback::{augmenting_traceback, traceback, Endpoint};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AuxError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("vertex `{0}` is covered by the matching")]
    Covered(String),
    #[error("input is not a path or cycle")]
    NotAPath,
    #[error("no edge is traversed twice in opposite directions")]
    NoOppositeRepeat,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("neither traceback is augmenting")]
    NeitherAugmenting,
}

/// Auxiliary unit-capacity instance with its back-maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryBundle {
    pub g_prime: CapacitatedGraph,
    pub m_prime: CMatching,
    /// Copies of each original vertex, in copy-index order.
    pub copy_classes: Vec<Vec<VertexId>>,
    /// Original vertex of each copy.
    pub vertex_eta: Vec<VertexId>,
    /// Original edge of each copy edge.
    pub edge_eta: Vec<EdgeId>,
}

/// Two unmatched copy edges of a path or cycle with the same original edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tie {
    pub first: EdgeId,
    pub second: EdgeId,
    /// Step positions of the two edges on the path.
    pub positions: (usize, usize),
}

pub fn build_auxiliary(instance: &Instance) -> Result<AuxiliaryBundle, AuxError> {
    let graph = &instance.graph;
    let matching = instance.matching_or_empty();
    let ids: Vec<EdgeId> = matching.edges().iter().copied().collect();
    CMatching::new(graph, ids)?;

    let mut vertices = Vec::new();
    let mut copy_classes = Vec::with_capacity(graph.vertex_count());
    let mut vertex_eta = Vec::new();
    for v in graph.vertex_ids() {
        let vert = graph.vertex(v);
        let class: Vec<VertexId> = (1..=vert.capacity)
            .map(|k| {
                vertices.push(Vertex {
                    id: format!("{}#{k}", vert.id),
                    capacity: 1,
                    declared_capacity: 1,
                });
                vertex_eta.push(v);
                VertexId(vertices.len() - 1)
            })
            .collect();
        copy_classes.push(class);
    }

    let mut next_free = vec![0usize; graph.vertex_count()];
    let mut edges = Vec::new();
    let mut edge_eta = Vec::new();
    let mut m_prime = BTreeSet::new();
    for e in graph.edge_ids() {
        let edge = graph.edge(e);
        let (cu, cv) = (&copy_classes[edge.u.0], &copy_classes[edge.v.0]);
        if matching.contains(e) {
            let a = cu[next_free[edge.u.0]];
            let b = cv[next_free[edge.v.0]];
            next_free[edge.u.0] += 1;
            next_free[edge.v.0] += 1;
            m_prime.insert(EdgeId(edges.len()));
            edges.push(Edge {
                u: a,
                v: b,
                weight: edge.weight,
            });
            edge_eta.push(e);
        } else {
            for &a in cu {
                for &b in cv {
                    edges.push(Edge {
                        u: a,
                        v: b,
                        weight: edge.weight,
                    });
                    edge_eta.push(e);
                }
            }
        }
    }
    Ok(AuxiliaryBundle {
        g_prime: CapacitatedGraph::from_parts(vertices, edges),
        m_prime: CMatching::from_set_unchecked(m_prime),
        copy_classes,
        vertex_eta,
        edge_eta,
    })
}

impl AuxiliaryBundle {
    pub fn eta_vertex(&self, v: VertexId) -> Result<VertexId, AuxError> {
        self.vertex_eta
            .get(v.0)
            .copied()
            .ok_or(AuxError::Graph(GraphError::UnknownVertexIndex(v.0)))
    }

    pub fn eta_edge(&self, e: EdgeId) -> Result<EdgeId, AuxError> {
        self.edge_eta
            .get(e.0)
            .copied()
            .ok_or(AuxError::Graph(GraphError::UnknownEdge(e.0)))
    }

    /// Image of a walk of `G'` in the original graph.
    pub fn eta_walk(&self, original: &CapacitatedGraph, walk: &Walk) -> Result<Walk, AuxError> {
        let start = self.eta_vertex(walk.start())?;
        let edges = walk.edges().map(|e| self.eta_edge(e)).collect::<Result<Vec<_>, _>>()?;
        Ok(Walk::from_edges(original, start, &edges)?)
    }

    /// Copies not covered by `M'`.
    pub fn exposed_copies(&self) -> Vec<VertexId> {
        self.g_prime
            .vertex_ids()
            .filter(|&v| !self.m_prime.covers(&self.g_prime, v))
            .collect()
    }

    /// All ties on a path or cycle of `G'`.
    pub fn find_ties(&self, path: &Walk) -> Result<Vec<Tie>, AuxError> {
        if !path.is_simple() {
            return Err(AuxError::NotAPath);
        }
        let steps = path.steps();
        let mut ties = Vec::new();
        for i in 0..steps.len() {
            for j in i + 1..steps.len() {
                let (a, b) = (steps[i].edge, steps[j].edge);
                if self.m_prime.contains(a) || self.m_prime.contains(b) {
                    continue;
                }
                if self.edge_eta[a.0] == self.edge_eta[b.0] {
                    ties.push(Tie {
                        first: a,
                        second: b,
                        positions: (i, j),
                    });
                }
            }
        }
        Ok(ties)
    }

    pub fn to_dump(&self, original: &CapacitatedGraph) -> AuxDump {
        let g = &self.g_prime;
        let vertices = g
            .vertex_ids()
            .map(|v| AuxVertex {
                id: g.name(v).to_string(),
                original: original.name(self.vertex_eta[v.0]).to_string(),
            })
            .collect();
        let edges = g
            .edge_ids()
            .map(|e| {
                let edge = g.edge(e);
                let orig = original.edge(self.edge_eta[e.0]);
                AuxEdge {
                    u: g.name(edge.u).to_string(),
                    v: g.name(edge.v).to_string(),
                    weight: Frac(edge.weight),
                    matched: self.m_prime.contains(e),
                    original: (original.name(orig.u).to_string(), original.name(orig.v).to_string()),
                }
            })
            .collect();
        let copy_classes = original
            .vertex_ids()
            .map(|v| {
                (
                    original.name(v).to_string(),
                    self.copy_classes[v.0].iter().map(|c| g.name(*c).to_string()).collect(),
                )
            })
            .collect();
        AuxDump {
            vertices,
            edges,
            copy_classes,
        }
    }
}

/// Removes an exposed vertex from the instance and its copy class from the
/// bundle. Surviving capacities are kept, so the result equals the bundle
/// built from the reduced instance.
pub fn remove_original_vertex(
    bundle: &AuxiliaryBundle,
    instance: &Instance,
    vertex: VertexId,
) -> Result<(AuxiliaryBundle, Instance), AuxError> {
    let graph = &instance.graph;
    graph.check_vertex(vertex)?;
    let matching = instance.matching_or_empty();
    if matching.covers(graph, vertex) {
        return Err(AuxError::Covered(graph.name(vertex).to_string()));
    }
    let (reduced, edge_map) = graph.without_vertices(&[vertex])?;
    let new_matching = CMatching::from_set_unchecked(
        matching
            .edges()
            .iter()
            .map(|e| edge_map[e.0].expect("matched edges avoid an exposed vertex"))
            .collect(),
    );
    let vertex_map = |v: VertexId| if v.0 < vertex.0 { VertexId(v.0) } else { VertexId(v.0 - 1) };

    let removed = &bundle.copy_classes[vertex.0];
    let (g_prime, copy_edge_map) = bundle.g_prime.without_vertices(removed)?;
    let copy_vertex_map = {
        let mut map = vec![None; bundle.g_prime.vertex_count()];
        let mut next = 0;
        for v in bundle.g_prime.vertex_ids() {
            if !removed.contains(&v) {
                map[v.0] = Some(VertexId(next));
                next += 1;
            }
        }
        map
    };
    let copy_classes = bundle
        .copy_classes
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != vertex.0)
        .map(|(_, class)| class.iter().map(|c| copy_vertex_map[c.0].expect("kept copy")).collect())
        .collect();
    let vertex_eta = bundle
        .vertex_eta
        .iter()
        .filter(|&&o| o != vertex)
        .map(|&o| vertex_map(o))
        .collect();
    let mut edge_eta = vec![EdgeId(0); g_prime.edge_count()];
    for (old, new) in copy_edge_map.iter().enumerate() {
        if let Some(new) = new {
            edge_eta[new.0] = edge_map[bundle.edge_eta[old].0].expect("copy edge of a surviving edge");
        }
    }
    let m_prime = CMatching::from_set_unchecked(
        bundle
            .m_prime
            .edges()
            .iter()
            .map(|e| copy_edge_map[e.0].expect("matched copy edges survive"))
            .collect(),
    );
    Ok((
        AuxiliaryBundle {
            g_prime,
            m_prime,
            copy_classes,
            vertex_eta,
            edge_eta,
        },
        Instance::with_matching(reduced, new_matching),
    ))
}

/// JSON dump of a bundle (copy classes and back-maps).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxDump {
    pub vertices: Vec<AuxVertex>,
    pub edges: Vec<AuxEdge>,
    pub copy_classes: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxVertex {
    pub id: String,
    pub original: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxEdge {
    pub u: String,
    pub v: String,
    pub weight: Frac,
    pub matched: bool,
    pub original: (String, String),
}
