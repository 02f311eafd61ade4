//! Alternating walks: gain and epsilon-augmentation, feasibility and
//! properness, bounded-length search on unit-capacity graphs, and
//! decomposition into basic augmenting structures.

mod decompose;
mod search;
mod trail;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CMatching, CapacitatedGraph, EdgeId, FractionalCMatching, GraphError, VertexId};
use crate::rational::Rational;

pub use decompose::{classify_and_check, decompose_to_basic_structure, BasicStructure, Classification, StructureKind};
pub use search::{find_feasible_augmenting_walk, walk_length_bound};
pub use trail::find_proper_augmenting_trail;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WalkError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("step {index} does not continue the walk")]
    Broken { index: usize },
    #[error("vertex `{0}` is not exposed")]
    NotExposed(String),
    #[error("graph has a vertex of capacity other than 1")]
    NotUnitCapacity,
    #[error("walk is not alternating")]
    NotAlternating,
    #[error("walk is not feasible")]
    NotFeasible,
    #[error("walk is not augmenting")]
    NotAugmenting,
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("no basic augmenting structure found in the walk")]
    NoStructure,
}

/// One traversal of an edge, arriving at `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub to: VertexId,
}

/// A walk `(start; e_1, ..., e_k; end)`. Edges and vertices may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    start: VertexId,
    steps: Vec<Step>,
}

impl Walk {
    pub fn empty(start: VertexId) -> Self {
        Walk {
            start,
            steps: Vec::new(),
        }
    }

    /// Follows `edges` from `start`, deriving each orientation.
    pub fn from_edges(graph: &CapacitatedGraph, start: VertexId, edges: &[EdgeId]) -> Result<Self, WalkError> {
        graph.check_vertex(start)?;
        let mut walk = Walk::empty(start);
        for (index, &e) in edges.iter().enumerate() {
            graph.check_edge(e)?;
            let edge = graph.edge(e);
            let at = walk.end();
            if !edge.touches(at) {
                return Err(WalkError::Broken { index });
            }
            walk.steps.push(Step {
                edge: e,
                to: edge.other(at),
            });
        }
        Ok(walk)
    }

    /// Walk through consecutive vertices; every consecutive pair must be an
    /// edge.
    pub fn from_vertices(graph: &CapacitatedGraph, vertices: &[VertexId]) -> Result<Self, WalkError> {
        let (&start, rest) = vertices
            .split_first()
            .ok_or_else(|| WalkError::Malformed("walk needs a start vertex".into()))?;
        graph.check_vertex(start)?;
        let mut walk = Walk::empty(start);
        for (index, &next) in rest.iter().enumerate() {
            let e = graph
                .edge_between(walk.end(), next)
                .ok_or(WalkError::Broken { index })?;
            walk.steps.push(Step { edge: e, to: next });
        }
        Ok(walk)
    }

    /// Walk through consecutive named vertices.
    pub fn from_names(graph: &CapacitatedGraph, names: &[&str]) -> Result<Self, WalkError> {
        let ids = names
            .iter()
            .map(|n| graph.vertex_by_name(n))
            .collect::<Result<Vec<_>, _>>()?;
        Walk::from_vertices(graph, &ids)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    /// `x_0, ..., x_k`.
    pub fn vertices(&self) -> Vec<VertexId> {
        std::iter::once(self.start).chain(self.steps.iter().map(|s| s.to)).collect()
    }

    pub fn is_closed(&self) -> bool {
        !self.steps.is_empty() && self.start == self.end()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn reversed(&self) -> Walk {
        let vs = self.vertices();
        let steps = self
            .steps
            .iter()
            .enumerate()
            .rev()
            .map(|(i, s)| Step { edge: s.edge, to: vs[i] })
            .collect();
        Walk {
            start: self.end(),
            steps,
        }
    }

    /// Steps `from..to` (0-based step indices), starting at `x_from`.
    pub fn subwalk(&self, from: usize, to: usize) -> Walk {
        let start = if from == 0 { self.start } else { self.steps[from - 1].to };
        Walk {
            start,
            steps: self.steps[from..to].to_vec(),
        }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Result<Walk, WalkError> {
        if other.start != self.end() {
            return Err(WalkError::Broken { index: self.len() });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk {
            start: self.start,
            steps,
        })
    }

    /// No vertex occurs twice, except that a closed walk returns to its start.
    pub fn is_simple(&self) -> bool {
        let vs = self.vertices();
        let body = if self.is_closed() { &vs[..vs.len() - 1] } else { &vs[..] };
        let mut seen = std::collections::HashSet::new();
        body.iter().all(|v| seen.insert(*v))
    }

    pub fn is_trail(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges().all(|e| seen.insert(e))
    }

    pub fn to_json(&self, graph: &CapacitatedGraph) -> WalkJson {
        let vs = self.vertices();
        WalkJson {
            start: graph.name(self.start).to_string(),
            steps: vs
                .windows(2)
                .map(|p| (graph.name(p[0]).to_string(), graph.name(p[1]).to_string()))
                .collect(),
        }
    }

    pub fn from_json(graph: &CapacitatedGraph, json: &WalkJson) -> Result<Walk, WalkError> {
        let start = graph.vertex_by_name(&json.start)?;
        let mut walk = Walk::empty(start);
        for (index, (a, b)) in json.steps.iter().enumerate() {
            let a = graph.vertex_by_name(a)?;
            let b = graph.vertex_by_name(b)?;
            if a != walk.end() {
                return Err(WalkError::Broken { index });
            }
            let e = graph.edge_between(a, b).ok_or(WalkError::Broken { index })?;
            walk.push(Step { edge: e, to: b });
        }
        Ok(walk)
    }

    pub fn label(&self, graph: &CapacitatedGraph) -> String {
        self.vertices()
            .iter()
            .map(|v| graph.name(*v))
            .collect::<Vec<_>>()
            .join("-")
    }
}

/// JSON form: start vertex and the vertex pair of every step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkJson {
    pub start: String,
    pub steps: Vec<(String, String)>,
}

/// Matched and unmatched edges strictly alternate along the walk.
pub fn is_alternating(walk: &Walk, matching: &CMatching) -> bool {
    walk.steps
        .windows(2)
        .all(|p| matching.contains(p[0].edge) != matching.contains(p[1].edge))
}

/// `w(W \ M) - w(W & M)`, counted with multiplicity.
pub fn gain(graph: &CapacitatedGraph, walk: &Walk, matching: &CMatching) -> Rational {
    walk.edges()
        .map(|e| {
            let w = graph.weight_of(e);
            if matching.contains(e) {
                -w
            } else {
                w
            }
        })
        .sum()
}

pub fn is_augmenting(graph: &CapacitatedGraph, walk: &Walk, matching: &CMatching) -> bool {
    is_alternating(walk, matching) && gain(graph, walk, matching).is_positive()
}

/// `kappa(e)`: number of traversals of each edge.
pub fn multiplicities(graph: &CapacitatedGraph, walk: &Walk) -> Vec<u32> {
    let mut kappa = vec![0u32; graph.edge_count()];
    for e in walk.edges() {
        kappa[e.0] += 1;
    }
    kappa
}

/// Largest admissible step of the epsilon-augmentation and the vector it
/// produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonAugmentation {
    pub eps_max: Rational,
    pub x: FractionalCMatching,
}

impl EpsilonAugmentation {
    pub fn is_feasible(&self) -> bool {
        self.eps_max.is_positive()
    }
}

/// The vector `x^{M/W}(eps)`: matched edges lose `kappa(e) eps`, unmatched
/// edges gain it.
pub fn augmentation_vector(
    graph: &CapacitatedGraph,
    walk: &Walk,
    matching: &CMatching,
    eps: Rational,
) -> FractionalCMatching {
    let kappa = multiplicities(graph, walk);
    let values = graph
        .edge_ids()
        .map(|e| {
            let k = Rational::from_integer(kappa[e.0] as i128);
            if matching.contains(e) {
                Rational::one() - k * eps
            } else {
                k * eps
            }
        })
        .collect();
    FractionalCMatching { values }
}

/// `eps_max` is the largest `eps` for which `x^{M/W}(eps)` is a fractional
/// c-matching, or 0 when no positive step is admissible (and for the empty
/// walk). The vector is evaluated at `eps_max`.
pub fn epsilon_augmentation(graph: &CapacitatedGraph, walk: &Walk, matching: &CMatching) -> EpsilonAugmentation {
    let kappa = multiplicities(graph, walk);
    let mut eps: Option<Rational> = None;
    let mut tighten = |bound: Rational| {
        eps = Some(match eps {
            Some(cur) if cur <= bound => cur,
            _ => bound,
        });
    };
    for e in graph.edge_ids() {
        if kappa[e.0] > 0 {
            tighten(Rational::new(1, kappa[e.0] as i128));
        }
    }
    for v in graph.vertex_ids() {
        let mut net: i128 = 0;
        for &e in graph.incident(v) {
            let k = kappa[e.0] as i128;
            net += if matching.contains(e) { -k } else { k };
        }
        if net > 0 {
            let slack = graph.capacity(v) as i128 - matching.degree(graph, v) as i128;
            tighten(Rational::new(slack.max(0), net));
        }
    }
    let eps_max = eps.unwrap_or_else(Rational::zero);
    EpsilonAugmentation {
        eps_max,
        x: augmentation_vector(graph, walk, matching, eps_max),
    }
}

pub fn is_feasible(graph: &CapacitatedGraph, walk: &Walk, matching: &CMatching) -> bool {
    epsilon_augmentation(graph, walk, matching).is_feasible()
}

/// Degree of `v` in `W (sym. diff.) M`, with `W` taken as an edge set.
fn symmetric_difference_degree(graph: &CapacitatedGraph, walk: &Walk, matching: &CMatching, v: VertexId) -> usize {
    let on_walk: std::collections::HashSet<EdgeId> = walk.edges().collect();
    graph
        .incident(v)
        .iter()
        .filter(|e| on_walk.contains(e) != matching.contains(**e))
        .count()
}

/// Alternating trail whose endpoints keep their degree within capacity after
/// the symmetric difference with `M`.
pub fn is_proper_trail(graph: &CapacitatedGraph, walk: &Walk, matching: &CMatching) -> bool {
    if !walk.is_trail() || !is_alternating(walk, matching) {
        return false;
    }
    [walk.start(), walk.end()]
        .iter()
        .all(|&v| symmetric_difference_degree(graph, walk, matching, v) <= graph.capacity(v) as usize)
}

/// No vertex has capacity above 1 (capacity 0 only occurs on isolated
/// vertices after clamping).
pub fn is_unit_capacity(graph: &CapacitatedGraph) -> bool {
    graph.vertices().iter().all(|v| v.capacity <= 1)
}
