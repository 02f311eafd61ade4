//! Exhaustive stabilizer search for small instances.

use crate::graph::{CapacitatedGraph, Instance, VertexId};
use crate::solvers::{fractional_value, is_stable_graph};

use super::StabilizerError;

pub const BRUTEFORCE_MAX_CANDIDATES: usize = 20;

/// Subsets of `0..n` of size `k` in lexicographic order.
fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> Result<bool, StabilizerError>) -> Result<bool, StabilizerError> {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(false);
    }
    loop {
        if visit(&idx)? {
            return Ok(true);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return Ok(false);
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn guard(count: usize) -> Result<(), StabilizerError> {
    if count > BRUTEFORCE_MAX_CANDIDATES {
        return Err(StabilizerError::TooLarge {
            limit: BRUTEFORCE_MAX_CANDIDATES,
            got: count,
        });
    }
    Ok(())
}

/// Smallest set of M-exposed vertices whose removal makes the instance
/// stable (`w(M) = nu_f(G \ S)`), or `None` if no such set exists. Ties go
/// to the lexicographically first set in vertex order.
pub fn m_vertex_stabilizer_bruteforce(instance: &Instance) -> Result<Option<Vec<VertexId>>, StabilizerError> {
    let graph = &instance.graph;
    let m = instance.matching_or_empty();
    let candidates: Vec<VertexId> = graph.vertex_ids().filter(|&v| !m.covers(graph, v)).collect();
    guard(candidates.len())?;
    let w_m = m.weight(graph);
    let stabilizes = |set: &[VertexId]| -> Result<bool, StabilizerError> {
        let (reduced, _) = graph.without_vertices(set)?;
        Ok(fractional_value(&reduced)? == w_m)
    };
    // Removing exposed vertices never raises nu_f and keeps M, so the
    // largest candidate set decides feasibility.
    if !stabilizes(&candidates)? {
        return Ok(None);
    }
    for k in 0..=candidates.len() {
        let mut found = None;
        combinations(candidates.len(), k, |idx| {
            let set: Vec<VertexId> = idx.iter().map(|&i| candidates[i]).collect();
            if stabilizes(&set)? {
                found = Some(set);
                return Ok(true);
            }
            Ok(false)
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    unreachable!("the full candidate set stabilizes")
}

/// Smallest `S` with `G \ S` stable.
pub fn vertex_stabilizer_bruteforce(graph: &CapacitatedGraph) -> Result<Vec<VertexId>, StabilizerError> {
    let n = graph.vertex_count();
    guard(n)?;
    for k in 0..=n {
        let mut found = None;
        combinations(n, k, |idx| {
            let set: Vec<VertexId> = idx.iter().map(|&i| VertexId(i)).collect();
            let (reduced, _) = graph.without_vertices(&set)?;
            if is_stable_graph(&reduced)?.stable {
                found = Some(set);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(set) = found {
            return Ok(set);
        }
    }
    unreachable!("removing every vertex leaves a stable graph")
}
