//! Weighted, vertex-capacitated graphs together with c-matchings and
//! fractional c-matchings.
//!
//! Vertices and edges are addressed by dense indices ([`VertexId`],
//! [`EdgeId`]) that follow input order; the string id of a vertex is kept for
//! I/O and for mapping between a graph and its subgraphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// Effective capacity, at most the vertex degree after normalization.
    pub capacity: u32,
    /// Capacity as written in the input.
    pub declared_capacity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Structural problems found while validating an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    #[error("vertex #{index}: duplicate vertex id `{id}`")]
    DuplicateVertex { index: usize, id: String },
    #[error("vertex `{id}`: negative capacity {capacity}")]
    NegativeCapacity { id: String, capacity: i64 },
    #[error("edge #{index}: unknown endpoint `{id}`")]
    UnknownEndpoint { index: usize, id: String },
    #[error("edge #{index}: self-loop at `{id}`")]
    SelfLoop { index: usize, id: String },
    #[error("edge #{index}: duplicate edge {{{u},{v}}} (first seen as edge #{first})")]
    DuplicateEdge {
        index: usize,
        first: usize,
        u: String,
        v: String,
    },
    #[error("edge #{index}: negative weight on {{{u},{v}}}")]
    NegativeWeight { index: usize, u: String, v: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown vertex index {0}")]
    UnknownVertexIndex(usize),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("no edge between `{0}` and `{1}`")]
    NoSuchEdge(String, String),
    #[error("vertex `{vertex}` has degree {degree} in the edge set but capacity {capacity}")]
    CapacityExceeded {
        vertex: String,
        degree: usize,
        capacity: u32,
    },
    #[error("fractional vector has {got} entries, graph has {expected} edges")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// Undirected simple graph with nonnegative rational weights and integer
/// vertex capacities.
#[derive(Debug, Clone)]
pub struct CapacitatedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: HashMap<String, VertexId>,
    incident: Vec<Vec<EdgeId>>,
    pairs: HashMap<(usize, usize), EdgeId>,
}

impl PartialEq for CapacitatedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for CapacitatedGraph {}

fn pair_key(a: VertexId, b: VertexId) -> (usize, usize) {
    if a.0 < b.0 {
        (a.0, b.0)
    } else {
        (b.0, a.0)
    }
}

impl CapacitatedGraph {
    /// Validates raw vertex and edge lists and returns the normalized graph
    /// (capacities clamped to degrees, input order kept), or every violation
    /// found.
    pub fn validate<S: AsRef<str>>(
        vertices: &[(S, i64)],
        edges: &[(S, S, Rational)],
    ) -> Result<Self, Vec<Violation>> {
        let mut violations = Vec::new();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        let mut verts = Vec::with_capacity(vertices.len());
        for (i, (id, cap)) in vertices.iter().enumerate() {
            let id = id.as_ref().to_string();
            if index.contains_key(&id) {
                violations.push(Violation::DuplicateVertex { index: i, id });
                continue;
            }
            if *cap < 0 {
                violations.push(Violation::NegativeCapacity {
                    id: id.clone(),
                    capacity: *cap,
                });
            }
            let declared = (*cap).clamp(0, u32::MAX as i64) as u32;
            index.insert(id.clone(), VertexId(verts.len()));
            verts.push(Vertex {
                id,
                capacity: declared,
                declared_capacity: declared,
            });
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut raw_edges = Vec::with_capacity(edges.len());
        for (i, (u, v, w)) in edges.iter().enumerate() {
            let (u, v) = (u.as_ref(), v.as_ref());
            let mut endpoints_ok = true;
            for id in [u, v] {
                if !index.contains_key(id) {
                    violations.push(Violation::UnknownEndpoint {
                        index: i,
                        id: id.to_string(),
                    });
                    endpoints_ok = false;
                }
            }
            if *w < Rational::zero() {
                violations.push(Violation::NegativeWeight {
                    index: i,
                    u: u.to_string(),
                    v: v.to_string(),
                });
            }
            if !endpoints_ok {
                continue;
            }
            if u == v {
                violations.push(Violation::SelfLoop {
                    index: i,
                    id: u.to_string(),
                });
                continue;
            }
            let (a, b) = (index[u], index[v]);
            let key = pair_key(a, b);
            if let Some(&first) = seen.get(&key) {
                violations.push(Violation::DuplicateEdge {
                    index: i,
                    first,
                    u: u.to_string(),
                    v: v.to_string(),
                });
                continue;
            }
            seen.insert(key, i);
            raw_edges.push(Edge {
                u: a,
                v: b,
                weight: *w,
            });
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let mut graph = Self::from_parts(verts, raw_edges);
        graph.clamp_capacities();
        Ok(graph)
    }

    /// Builds a graph from already-checked parts without clamping.
    pub(crate) fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), VertexId(i)))
            .collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        let mut pairs = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            incident[e.u.0].push(EdgeId(i));
            incident[e.v.0].push(EdgeId(i));
            pairs.insert(pair_key(e.u, e.v), EdgeId(i));
        }
        CapacitatedGraph {
            vertices,
            edges,
            index,
            incident,
            pairs,
        }
    }

    fn clamp_capacities(&mut self) {
        for (i, v) in self.vertices.iter_mut().enumerate() {
            v.capacity = v.capacity.min(self.incident[i].len() as u32);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn capacity(&self, v: VertexId) -> u32 {
        self.vertices[v.0].capacity
    }

    pub fn weight_of(&self, e: EdgeId) -> Rational {
        self.edges[e.0].weight
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v.0].id
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    pub fn degree_in_graph(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    pub fn vertex_by_name(&self, id: &str) -> Result<VertexId, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.pairs.get(&pair_key(a, b)).copied()
    }

    pub fn edge_by_names(&self, a: &str, b: &str) -> Result<EdgeId, GraphError> {
        let (x, y) = (self.vertex_by_name(a)?, self.vertex_by_name(b)?);
        self.edge_between(x, y)
            .ok_or_else(|| GraphError::NoSuchEdge(a.to_string(), b.to_string()))
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e.0 < self.edges.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownEdge(e.0))
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.vertices.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertexIndex(v.0))
        }
    }

    /// Human-readable edge label `u-v`.
    pub fn edge_label(&self, e: EdgeId) -> String {
        let edge = self.edge(e);
        format!("{}-{}", self.name(edge.u), self.name(edge.v))
    }

    /// `true` iff every vertex has at most `c_v` incident members of `edges`.
    pub fn is_c_matching<'a, I>(&self, edges: I) -> Result<bool, GraphError>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        Ok(self.first_capacity_violation(edges)?.is_none())
    }

    fn first_capacity_violation<'a, I>(&self, edges: I) -> Result<Option<GraphError>, GraphError>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut degree = vec![0usize; self.vertices.len()];
        for &e in edges {
            self.check_edge(e)?;
            let edge = self.edge(e);
            degree[edge.u.0] += 1;
            degree[edge.v.0] += 1;
        }
        Ok(degree.iter().enumerate().find_map(|(i, &d)| {
            (d > self.vertices[i].capacity as usize).then(|| GraphError::CapacityExceeded {
                vertex: self.vertices[i].id.clone(),
                degree: d,
                capacity: self.vertices[i].capacity,
            })
        }))
    }

    /// Exact total weight of an edge multiset.
    pub fn weight<'a, I>(&self, edges: I) -> Result<Rational, GraphError>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut total = Rational::zero();
        for &e in edges {
            self.check_edge(e)?;
            total += self.edges[e.0].weight;
        }
        Ok(total)
    }

    /// `w^T x` for a per-edge vector.
    pub fn fractional_weight(&self, x: &FractionalCMatching) -> Result<Rational, GraphError> {
        if x.values.len() != self.edges.len() {
            return Err(GraphError::DimensionMismatch {
                expected: self.edges.len(),
                got: x.values.len(),
            });
        }
        Ok(self
            .edges
            .iter()
            .zip(&x.values)
            .map(|(e, v)| e.weight * v)
            .sum())
    }

    /// Number of members of `edges` incident to `v`, counting multiplicity.
    pub fn degree<'a, I>(&self, v: VertexId, edges: I) -> Result<usize, GraphError>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        self.check_vertex(v)?;
        let mut count = 0;
        for &e in edges {
            self.check_edge(e)?;
            if self.edge(e).touches(v) {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn vertex_status(&self, matching: &CMatching, v: VertexId) -> VertexStatus {
        let d = matching.degree(self, v);
        if d == 0 {
            VertexStatus::Exposed
        } else if d >= self.capacity(v) as usize {
            VertexStatus::Saturated
        } else {
            VertexStatus::CoveredUnsaturated
        }
    }

    /// Subgraph induced by `keep`, capacities re-clamped to the new degrees.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<Self, GraphError> {
        let mut sub = self.restrict(keep)?.0;
        sub.clamp_capacities();
        Ok(sub)
    }

    /// `G \ removed`, keeping every surviving capacity as it is.
    ///
    /// Returns the subgraph and the map from old edge ids to new ones.
    pub fn without_vertices(
        &self,
        removed: &[VertexId],
    ) -> Result<(Self, Vec<Option<EdgeId>>), GraphError> {
        let mut drop = vec![false; self.vertices.len()];
        for &v in removed {
            self.check_vertex(v)?;
            drop[v.0] = true;
        }
        let keep: Vec<VertexId> = self.vertex_ids().filter(|v| !drop[v.0]).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[VertexId]) -> Result<(Self, Vec<Option<EdgeId>>), GraphError> {
        let mut new_index = vec![None; self.vertices.len()];
        for &v in keep {
            self.check_vertex(v)?;
            new_index[v.0] = Some(());
        }
        // Preserve canonical (input) order regardless of the order of `keep`.
        let mut remap = vec![None; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, vert) in self.vertices.iter().enumerate() {
            if new_index[i].is_some() {
                remap[i] = Some(VertexId(vertices.len()));
                vertices.push(vert.clone());
            }
        }
        let mut edge_map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let (Some(u), Some(v)) = (remap[e.u.0], remap[e.v.0]) {
                edge_map[i] = Some(EdgeId(edges.len()));
                edges.push(Edge {
                    u,
                    v,
                    weight: e.weight,
                });
            }
        }
        Ok((Self::from_parts(vertices, edges), edge_map))
    }

    /// Bipartite test by 2-colouring.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![None; self.vertices.len()];
        for s in 0..self.vertices.len() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let cx = colour[x].unwrap();
                for &e in &self.incident[x] {
                    let y = self.edges[e.0].other(VertexId(x)).0;
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            stack.push(y);
                        }
                        Some(cy) if cy == cx => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexStatus {
    Exposed,
    CoveredUnsaturated,
    Saturated,
}

impl VertexStatus {
    pub fn is_covered(self) -> bool {
        self != VertexStatus::Exposed
    }
}

/// A set of edges respecting every vertex capacity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CMatching {
    edges: BTreeSet<EdgeId>,
}

impl CMatching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks the capacity constraints before wrapping the set.
    pub fn new<I>(graph: &CapacitatedGraph, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        if let Some(err) = graph.first_capacity_violation(&edges)? {
            return Err(err);
        }
        Ok(CMatching { edges })
    }

    pub(crate) fn from_set_unchecked(edges: BTreeSet<EdgeId>) -> Self {
        CMatching { edges }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degree(&self, graph: &CapacitatedGraph, v: VertexId) -> usize {
        graph
            .incident(v)
            .iter()
            .filter(|e| self.edges.contains(e))
            .count()
    }

    pub fn weight(&self, graph: &CapacitatedGraph) -> Rational {
        self.edges.iter().map(|&e| graph.weight_of(e)).sum()
    }

    /// Dense membership mask indexed by edge id.
    pub fn mask(&self, edge_count: usize) -> Vec<bool> {
        let mut mask = vec![false; edge_count];
        for e in &self.edges {
            mask[e.0] = true;
        }
        mask
    }

    /// Vertex covered by the matching (degree > 0)?
    pub fn covers(&self, graph: &CapacitatedGraph, v: VertexId) -> bool {
        self.degree(graph, v) > 0
    }

    pub fn as_fractional(&self, graph: &CapacitatedGraph) -> FractionalCMatching {
        let mut values = vec![Rational::zero(); graph.edge_count()];
        for e in &self.edges {
            values[e.0] = Rational::one();
        }
        FractionalCMatching { values }
    }

    /// Matching as a list of `(u, v)` name pairs in edge order.
    pub fn named_pairs(&self, graph: &CapacitatedGraph) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&e| {
                let edge = graph.edge(e);
                (graph.name(edge.u).to_string(), graph.name(edge.v).to_string())
            })
            .collect()
    }
}

/// Per-edge values in `[0,1]` with incident sums bounded by capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCMatching {
    pub values: Vec<Rational>,
}

impl FractionalCMatching {
    pub fn zeros(graph: &CapacitatedGraph) -> Self {
        FractionalCMatching {
            values: vec![Rational::zero(); graph.edge_count()],
        }
    }

    /// Feasibility for the capacitated fractional matching polytope.
    pub fn is_feasible(&self, graph: &CapacitatedGraph) -> bool {
        if self.values.len() != graph.edge_count() {
            return false;
        }
        if self
            .values
            .iter()
            .any(|x| *x < Rational::zero() || *x > Rational::one())
        {
            return false;
        }
        graph.vertex_ids().all(|v| {
            let load: Rational = graph.incident(v).iter().map(|e| self.values[e.0]).sum();
            load <= Rational::from_integer(graph.capacity(v) as i128)
        })
    }

    pub fn is_half_integral(&self) -> bool {
        self.values
            .iter()
            .all(|x| *x == Rational::zero() || *x == Rational::one() || *x == Rational::new(1, 2))
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|x| x.is_integer())
    }
}

/// A validated graph, optionally with a c-matching attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: CapacitatedGraph,
    pub matching: Option<CMatching>,
}

impl Instance {
    pub fn new(graph: CapacitatedGraph) -> Self {
        Instance {
            graph,
            matching: None,
        }
    }

    pub fn with_matching(graph: CapacitatedGraph, matching: CMatching) -> Self {
        Instance {
            graph,
            matching: Some(matching),
        }
    }

    /// Attached matching, or the empty matching.
    pub fn matching_or_empty(&self) -> CMatching {
        self.matching.clone().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn edges(g: &CapacitatedGraph, pairs: &[(&str, &str)]) -> Vec<EdgeId> {
        pairs
            .iter()
            .map(|(a, b)| g.edge_by_names(a, b).unwrap())
            .collect()
    }

    #[test]
    fn fig5_is_valid_and_unchanged() {
        let inst = fixtures::fig5();
        let g = &inst.graph;
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 5);
        let caps: Vec<u32> = g.vertices().iter().map(|v| v.capacity).collect();
        assert_eq!(caps, vec![2, 2, 2, 1]);
        assert!(g.vertices().iter().all(|v| v.capacity == v.declared_capacity));
    }

    #[test]
    fn lone_vertex_capacity_is_clamped_to_degree() {
        let g = CapacitatedGraph::validate(&[("a", 7)], &[]).unwrap();
        assert_eq!(g.capacity(VertexId(0)), 0);
        assert_eq!(g.vertex(VertexId(0)).declared_capacity, 7);
    }

    #[test]
    fn structural_violations_are_reported_with_location() {
        let one = Rational::one();
        let errs = CapacitatedGraph::validate(&[("a", 1), ("b", 1)], &[("a", "a", one)]).unwrap_err();
        assert_eq!(
            errs,
            vec![Violation::SelfLoop {
                index: 0,
                id: "a".into()
            }]
        );
        let errs = CapacitatedGraph::validate(
            &[("a", 1), ("b", -1)],
            &[("a", "b", one), ("b", "a", one), ("a", "z", -one)],
        )
        .unwrap_err();
        assert!(errs.contains(&Violation::NegativeCapacity {
            id: "b".into(),
            capacity: -1
        }));
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::DuplicateEdge { index: 1, first: 0, .. })));
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::UnknownEndpoint { index: 2, .. })));
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::NegativeWeight { index: 2, .. })));
    }

    #[test]
    fn c_matching_checks() {
        let inst = fixtures::fig5();
        let g = &inst.graph;
        let m = edges(g, &[("1", "2"), ("1", "3"), ("2", "3")]);
        assert!(g.is_c_matching(&m).unwrap());
        let too_many = edges(g, &[("1", "2"), ("1", "3"), ("2", "3"), ("2", "4")]);
        assert!(!g.is_c_matching(&too_many).unwrap());
        assert!(g.is_c_matching(&[]).unwrap());
        assert_eq!(
            g.is_c_matching(&[EdgeId(99)]),
            Err(GraphError::UnknownEdge(99))
        );
        assert!(matches!(
            CMatching::new(g, too_many),
            Err(GraphError::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn weights_and_degrees() {
        let fig1 = fixtures::fig1();
        let g = &fig1.graph;
        let m = fig1.matching.as_ref().unwrap();
        assert_eq!(g.weight(m.edges()).unwrap(), Rational::from_integer(5));
        assert_eq!(g.weight(&[]).unwrap(), Rational::zero());
        let v = g.vertex_by_name("v").unwrap();
        assert_eq!(g.degree(v, m.edges()).unwrap(), 2);
        assert_eq!(g.degree(v, &[]).unwrap(), 0);

        let fig5 = fixtures::fig5();
        let g5 = &fig5.graph;
        let four = g5.vertex_by_name("4").unwrap();
        assert_eq!(g5.degree(four, &edges(g5, &[("2", "4"), ("3", "4")])).unwrap(), 2);
        // multiset counts multiplicity
        let e24 = g5.edge_by_names("2", "4").unwrap();
        assert_eq!(g5.degree(four, &[e24, e24]).unwrap(), 2);

        let mut x = FractionalCMatching::zeros(g5);
        for (a, b, val) in [
            ("1", "2", r(1, 1)),
            ("1", "3", r(1, 1)),
            ("2", "3", r(1, 2)),
            ("2", "4", r(1, 2)),
            ("3", "4", r(1, 2)),
        ] {
            x.values[g5.edge_by_names(a, b).unwrap().0] = val;
        }
        assert!(x.is_feasible(g5));
        assert_eq!(g5.fractional_weight(&x).unwrap(), r(7, 2));
    }

    #[test]
    fn vertex_status_on_fig1() {
        let fig1 = fixtures::fig1();
        let g = &fig1.graph;
        let m = fig1.matching.as_ref().unwrap();
        let status = |name| g.vertex_status(m, g.vertex_by_name(name).unwrap());
        assert_eq!(status("t"), VertexStatus::Exposed);
        assert_eq!(status("b"), VertexStatus::CoveredUnsaturated);
        assert_eq!(status("x"), VertexStatus::Saturated);
    }

    #[test]
    fn induced_subgraphs() {
        let fig5 = fixtures::fig5();
        let g = &fig5.graph;
        let keep: Vec<VertexId> = ["1", "2", "3"]
            .iter()
            .map(|n| g.vertex_by_name(n).unwrap())
            .collect();
        let tri = g.induced_subgraph(&keep).unwrap();
        assert_eq!(tri.vertex_count(), 3);
        assert_eq!(tri.edge_count(), 3);
        let all: Vec<VertexId> = g.vertex_ids().collect();
        assert_eq!(&g.induced_subgraph(&all).unwrap(), g);

        let fig1 = fixtures::fig1();
        let g1 = &fig1.graph;
        let t = g1.vertex_by_name("t").unwrap();
        let keep: Vec<VertexId> = g1.vertex_ids().filter(|&v| v != t).collect();
        let sub = g1.induced_subgraph(&keep).unwrap();
        assert_eq!(sub.vertex_count(), 8);
        assert_eq!(sub.edge_count(), 8);
        assert_eq!(
            g.induced_subgraph(&[VertexId(17)]),
            Err(GraphError::UnknownVertexIndex(17))
        );
    }

    #[test]
    fn induced_subgraph_reclamps_while_without_vertices_keeps_capacity() {
        let fig5 = fixtures::fig5();
        let g = &fig5.graph;
        let four = g.vertex_by_name("4").unwrap();
        let (kept, map) = g.without_vertices(&[four]).unwrap();
        assert_eq!(kept.vertex_count(), 3);
        assert_eq!(map.iter().filter(|m| m.is_none()).count(), 2);
        // vertex 2 had capacity 2 and now degree 2: unchanged either way
        let two = kept.vertex_by_name("2").unwrap();
        assert_eq!(kept.capacity(two), 2);

        let star = CapacitatedGraph::validate(
            &[("c", 3), ("a", 1), ("b", 1), ("d", 1)],
            &[
                ("c", "a", Rational::one()),
                ("c", "b", Rational::one()),
                ("c", "d", Rational::one()),
            ],
        )
        .unwrap();
        let d = star.vertex_by_name("d").unwrap();
        let (raw, _) = star.without_vertices(&[d]).unwrap();
        assert_eq!(raw.capacity(VertexId(0)), 3);
        let keep: Vec<VertexId> = star.vertex_ids().filter(|&v| v != d).collect();
        let clamped = star.induced_subgraph(&keep).unwrap();
        assert_eq!(clamped.capacity(VertexId(0)), 2);
    }

    #[test]
    fn bipartite_detection() {
        assert!(!fixtures::triangle().graph.is_bipartite());
        assert!(fixtures::single_edge().graph.is_bipartite());
    }
}
