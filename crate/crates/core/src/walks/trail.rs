//! Exhaustive search for proper augmenting trails (small instances only).

use num_traits::Signed;

use crate::graph::{CMatching, CapacitatedGraph};

use super::{gain, is_proper_trail, Step, Walk};

/// Depth-first enumeration of alternating trails from every vertex; returns
/// the first proper augmenting one. Exponential: intended for graphs with a
/// handful of edges.
pub fn find_proper_augmenting_trail(graph: &CapacitatedGraph, matching: &CMatching) -> Option<Walk> {
    let mut used = vec![false; graph.edge_count()];
    for s in graph.vertex_ids() {
        let mut walk = Walk::empty(s);
        if let Some(found) = extend(graph, matching, &mut walk, &mut used) {
            return Some(found);
        }
    }
    None
}

fn extend(graph: &CapacitatedGraph, matching: &CMatching, walk: &mut Walk, used: &mut [bool]) -> Option<Walk> {
    if !walk.is_empty() && gain(graph, walk, matching).is_positive() && is_proper_trail(graph, walk, matching) {
        return Some(walk.clone());
    }
    let at = walk.end();
    let last = walk.steps().last().map(|s| matching.contains(s.edge));
    for &e in graph.incident(at) {
        if used[e.0] || last == Some(matching.contains(e)) {
            continue;
        }
        used[e.0] = true;
        walk.push(Step {
            edge: e,
            to: graph.edge(e).other(at),
        });
        let found = extend(graph, matching, walk, used);
        walk.steps.pop();
        used[e.0] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}
