//! Minimum independent dominating set: exact and greedy solvers, and the
//! reduction to the vertex-stabilizer problem.
//!
//! Every source vertex `v` gets a gadget on `N+(v) + {v1..v4}`: a star from
//! the closed neighbourhood into `v1`, the edge `v1 v2` and the triangle
//! `v2 v3 v4`. Every source edge `uv` gets `n` gadgets, each a vertex `e1`
//! joined to `u`, `v` and a pendant `e2`, plus the triangle `e3 e4 e5` hung
//! from `e1` via `e1 e3`.

use num_traits::One;

use crate::graph::{CapacitatedGraph, VertexId};
use crate::rational::Rational;

use super::GenError;

pub const MIDS_BRUTEFORCE_MAX_VERTICES: usize = 20;

/// Plain simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidsInstance {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl MidsInstance {
    /// Forgets weights and capacities.
    pub fn from_graph(graph: &CapacitatedGraph) -> Self {
        MidsInstance {
            names: graph.vertices().iter().map(|v| v.id.clone()).collect(),
            edges: graph.edges().iter().map(|e| (e.u.0, e.v.0)).collect(),
        }
    }

    /// Vertices `0..n` named by their index, with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        MidsInstance {
            names: (0..n).map(|i| i.to_string()).collect(),
            edges: edges.to_vec(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn is_independent_dominating(source: &MidsInstance, set: &[usize]) -> bool {
    let n = source.vertex_count();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let independent = source.edges.iter().all(|&(u, v)| !(inside[u] && inside[v]));
    let dominating = (0..n).all(|v| inside[v] || source.neighbours(v).iter().any(|&u| inside[u]));
    independent && dominating
}

fn check_size(source: &MidsInstance) -> Result<(), GenError> {
    let n = source.vertex_count();
    if n > MIDS_BRUTEFORCE_MAX_VERTICES {
        return Err(GenError::TooLarge {
            limit: MIDS_BRUTEFORCE_MAX_VERTICES,
            got: n,
        });
    }
    Ok(())
}

fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |m| m.count_ones() as usize == k)
}

fn ids_mask(adj: &[u64], n: usize, mask: u64) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut dominated = mask;
    for (v, &nb) in adj.iter().enumerate() {
        if mask >> v & 1 == 1 {
            if nb & mask != 0 {
                return false;
            }
            dominated |= nb;
        }
    }
    dominated & full == full
}

fn mask_to_vec(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

/// Smallest independent dominating set; among those of minimum size the
/// one with the smallest bitmask.
pub fn mids_bruteforce(source: &MidsInstance) -> Result<Vec<usize>, GenError> {
    Ok(all_minimum_ids(source)?.into_iter().next().unwrap_or_default())
}

/// Every independent dominating set of minimum size.
pub fn all_minimum_ids(source: &MidsInstance) -> Result<Vec<Vec<usize>>, GenError> {
    check_size(source)?;
    let n = source.vertex_count();
    let adj = source.adjacency();
    for k in 0..=n {
        let found: Vec<Vec<usize>> = masks_of_size(n, k)
            .filter(|&m| ids_mask(&adj, n, m))
            .map(|m| mask_to_vec(m, n))
            .collect();
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Ok(vec![Vec::new()])
}

/// Maximal independent set built in canonical order.
pub fn greedy_ids(source: &MidsInstance) -> Vec<usize> {
    let n = source.vertex_count();
    let mut blocked = vec![false; n];
    let mut chosen = Vec::new();
    for v in 0..n {
        if blocked[v] {
            continue;
        }
        chosen.push(v);
        blocked[v] = true;
        for u in source.neighbours(v) {
            blocked[u] = true;
        }
    }
    chosen
}

/// Which gadget an edge of the reduced graph belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gadget {
    Vertex(usize),
    Edge { edge: usize, copy: usize },
}

/// Where a vertex of the reduced graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrigin {
    Source(usize),
    /// `v_k`, `k` in `1..=4`.
    VertexGadget { vertex: usize, k: usize },
    /// `e_k^i`, `k` in `1..=5`, `copy` = `i` in `1..=n`.
    EdgeGadget { edge: usize, copy: usize, k: usize },
}

#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: CapacitatedGraph,
    pub vertex_origin: Vec<VertexOrigin>,
    pub edge_gadget: Vec<Gadget>,
}

impl ReducedInstance {
    /// Reduced-graph vertex of a source vertex.
    pub fn source_vertex(&self, v: usize) -> VertexId {
        VertexId(v)
    }
}

pub fn build_mids_reduction(source: &MidsInstance) -> ReducedInstance {
    let n = source.vertex_count();
    let mut names: Vec<String> = source.names.clone();
    let mut origin: Vec<VertexOrigin> = (0..n).map(VertexOrigin::Source).collect();
    let mut caps: Vec<i64> = vec![0; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut gadgets = Vec::new();
    let mut add_vertex = |name: String, o: VertexOrigin, cap: i64, names: &mut Vec<String>, caps: &mut Vec<i64>| {
        names.push(name);
        origin.push(o);
        caps.push(cap);
        names.len() - 1
    };

    for v in 0..n {
        let nb = source.neighbours(v);
        let base = &source.names[v];
        let ids: Vec<usize> = (1..=4)
            .map(|k| {
                let cap = if k == 1 { nb.len() as i64 + 1 } else { 1 };
                add_vertex(
                    format!("{base}.{k}"),
                    VertexOrigin::VertexGadget { vertex: v, k },
                    cap,
                    &mut names,
                    &mut caps,
                )
            })
            .collect();
        let mut closed = nb.clone();
        closed.push(v);
        closed.sort_unstable();
        for u in closed {
            edges.push((u, ids[0]));
        }
        for (a, b) in [(0, 1), (1, 2), (2, 3), (1, 3)] {
            edges.push((ids[a], ids[b]));
        }
        gadgets.extend(std::iter::repeat_n(Gadget::Vertex(v), nb.len() + 5));
    }

    for (ei, &(u, v)) in source.edges.iter().enumerate() {
        for copy in 1..=n {
            let label = format!("{}-{}", source.names[u], source.names[v]);
            let ids: Vec<usize> = (1..=5)
                .map(|k| {
                    let cap = if k == 1 || k == 3 { 2 } else { 1 };
                    add_vertex(
                        format!("{label}.{copy}.{k}"),
                        VertexOrigin::EdgeGadget { edge: ei, copy, k },
                        cap,
                        &mut names,
                        &mut caps,
                    )
                })
                .collect();
            edges.push((u, ids[0]));
            edges.push((v, ids[0]));
            for (a, b) in [(0, 1), (0, 2), (2, 3), (3, 4), (2, 4)] {
                edges.push((ids[a], ids[b]));
            }
            gadgets.extend(std::iter::repeat_n(Gadget::Edge { edge: ei, copy }, 7));
        }
    }

    // Source vertices are saturated exactly by their degree in the union.
    for &(a, b) in &edges {
        if a < n {
            caps[a] += 1;
        }
        if b < n {
            caps[b] += 1;
        }
    }
    let vertices: Vec<(&str, i64)> = names.iter().map(|s| s.as_str()).zip(caps.iter().copied()).collect();
    let weighted: Vec<(&str, &str, Rational)> = edges
        .iter()
        .map(|&(a, b)| (names[a].as_str(), names[b].as_str(), Rational::one()))
        .collect();
    let graph = CapacitatedGraph::validate(&vertices, &weighted).expect("gadget union is a simple graph");
    ReducedInstance {
        graph,
        vertex_origin: origin,
        edge_gadget: gadgets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expected_counts(source: &MidsInstance) -> (usize, usize) {
        let n = source.vertex_count();
        let m = source.edges.len();
        let closed: usize = (0..n).map(|v| source.neighbours(v).len() + 1).sum();
        (n + 4 * n + 5 * n * m, closed + 4 * n + 7 * n * m)
    }

    #[test]
    fn single_edge_reduction_counts() {
        let src = MidsInstance::from_edges(2, &[(0, 1)]);
        let red = build_mids_reduction(&src);
        assert_eq!(red.graph.vertex_count(), 20);
        assert_eq!(red.graph.edge_count(), 26);
        assert_eq!((20, 26), expected_counts(&src));
    }

    #[test]
    fn isolated_vertex_reduction() {
        let src = MidsInstance::from_edges(1, &[]);
        let red = build_mids_reduction(&src);
        assert_eq!(red.graph.vertex_count(), 5);
        assert_eq!(red.graph.edge_count(), 5);
    }

    #[test]
    fn capacities_follow_the_gadget_rules() {
        // path 0 - 1 - 2: vertex 1 has degree 2
        let src = MidsInstance::from_edges(3, &[(0, 1), (1, 2)]);
        let red = build_mids_reduction(&src);
        let g = &red.graph;
        assert_eq!((g.vertex_count(), g.edge_count()), expected_counts(&src));
        for v in g.vertex_ids() {
            let cap = g.vertex(v).declared_capacity as usize;
            match red.vertex_origin[v.0] {
                VertexOrigin::Source(_) => assert_eq!(cap, g.degree_in_graph(v)),
                VertexOrigin::VertexGadget { vertex, k: 1 } => {
                    assert_eq!(cap, src.neighbours(vertex).len() + 1)
                }
                VertexOrigin::EdgeGadget { k: 1 | 3, .. } => assert_eq!(cap, 2),
                _ => assert_eq!(cap, 1),
            }
        }
        // the degree-2 vertex gadget: star of three edges into 1.1
        let hub = g.vertex_by_name("1.1").unwrap();
        assert_eq!(g.degree_in_graph(hub), 4);
        for other in ["0", "1", "2", "1.2"] {
            assert!(g.edge_between(hub, g.vertex_by_name(other).unwrap()).is_some());
        }
        let e1 = g.vertex_by_name("0-1.2.1").unwrap();
        let neighbours: Vec<&str> = g
            .incident(e1)
            .iter()
            .map(|&e| g.name(g.edge(e).other(e1)))
            .collect();
        assert_eq!(neighbours, vec!["0", "1", "0-1.2.2", "0-1.2.3"]);
    }

    #[test]
    fn mids_small_cases() {
        assert_eq!(mids_bruteforce(&MidsInstance::from_edges(2, &[(0, 1)])).unwrap().len(), 1);
        let p3 = MidsInstance::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(mids_bruteforce(&p3).unwrap(), vec![1]);
        let c5 = MidsInstance::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(mids_bruteforce(&c5).unwrap().len(), 2);
        assert_eq!(greedy_ids(&c5).len(), 2);
        let star = MidsInstance::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(greedy_ids(&star), vec![0]);
    }

    #[test]
    fn greedy_is_independent_and_dominating() {
        let g = MidsInstance::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4)]);
        let set = greedy_ids(&g);
        assert!(is_independent_dominating(&g, &set));
        assert!(set.len() >= mids_bruteforce(&g).unwrap().len());
    }
}
