//! Feasible augmenting walk search on unit-capacity graphs.
//!
//! Dynamic program over `(length, vertex, last edge matched?)` storing the
//! maximum gain of an alternating walk from the start vertex reaching that
//! state, with a predecessor edge. Walks (not paths) are closed under the
//! transitions, so the table is exact: a feasible augmenting walk of length
//! `<= max_len` exists iff some accepting state has positive gain. In a
//! unit-capacity graph an alternating walk from an exposed vertex is feasible
//! iff its last edge is matched or it ends at a vertex with spare capacity.
//! Capacity-0 vertices are exposed but have no room, so they neither start
//! nor end a feasible walk.
//!
//! Among accepting states with positive gain the shortest length wins, then
//! the larger gain, then the smaller end vertex. Equal-gain predecessors are
//! resolved toward the smaller edge id.

use crate::graph::{CMatching, CapacitatedGraph, EdgeId, VertexId};
use crate::rational::ScaledWeights;

use super::{is_unit_capacity, Step, Walk, WalkError};

/// Length bound used by the stabilizer: three times the vertex count.
pub fn walk_length_bound(graph: &CapacitatedGraph) -> usize {
    3 * graph.vertex_count()
}

#[derive(Clone, Copy)]
struct Cell {
    gain: i128,
    via: EdgeId,
}

pub fn find_feasible_augmenting_walk(
    graph: &CapacitatedGraph,
    matching: &CMatching,
    start: VertexId,
    max_len: usize,
) -> Result<Option<Walk>, WalkError> {
    graph.check_vertex(start)?;
    if !is_unit_capacity(graph) {
        return Err(WalkError::NotUnitCapacity);
    }
    if matching.covers(graph, start) {
        return Err(WalkError::NotExposed(graph.name(start).to_string()));
    }
    if graph.capacity(start) == 0 {
        return Ok(None);
    }
    let scaled = ScaledWeights::new(graph.edges().iter().map(|e| &e.weight).collect::<Vec<_>>())
        .map_err(|_| WalkError::Malformed("edge weights overflow 128-bit scaling".into()))?;
    let n = graph.vertex_count();
    let matched = matching.mask(graph.edge_count());
    let exposed: Vec<bool> = graph
        .vertex_ids()
        .map(|v| graph.capacity(v) > 0 && !matching.covers(graph, v))
        .collect();
    let idx = |v: usize, m: bool| 2 * v + usize::from(m);

    // layers[l][idx(v, last_matched)]
    let mut layers: Vec<Vec<Option<Cell>>> = Vec::with_capacity(max_len + 1);
    let mut first = vec![None; 2 * n];
    // The start behaves like "after a matched edge": the next edge is unmatched.
    first[idx(start.0, true)] = Some(Cell {
        gain: 0,
        via: EdgeId(usize::MAX),
    });
    layers.push(first);

    for len in 1..=max_len {
        let prev = &layers[len - 1];
        let mut next: Vec<Option<Cell>> = vec![None; 2 * n];
        for v in 0..n {
            for last in [false, true] {
                let Some(cell) = prev[idx(v, last)] else { continue };
                for &e in graph.incident(VertexId(v)) {
                    let em = matched[e.0];
                    if em == last {
                        continue;
                    }
                    let to = graph.edge(e).other(VertexId(v)).0;
                    let w = scaled.values[e.0];
                    let gain = if em { cell.gain - w } else { cell.gain + w };
                    let slot = &mut next[idx(to, em)];
                    let better = match slot {
                        None => true,
                        Some(c) => gain > c.gain || (gain == c.gain && e < c.via),
                    };
                    if better {
                        *slot = Some(Cell { gain, via: e });
                    }
                }
            }
        }
        let mut best: Option<(i128, usize, bool)> = None;
        for v in 0..n {
            for last in [false, true] {
                let Some(cell) = next[idx(v, last)] else { continue };
                let accepting = last || exposed[v];
                if !accepting || cell.gain <= 0 {
                    continue;
                }
                if best.is_none_or(|(g, _, _)| cell.gain > g) {
                    best = Some((cell.gain, v, last));
                }
            }
        }
        layers.push(next);
        if let Some((_, v, last)) = best {
            return Ok(Some(reconstruct(graph, &matched, &layers, len, v, last)));
        }
    }
    Ok(None)
}

fn reconstruct(
    graph: &CapacitatedGraph,
    matched: &[bool],
    layers: &[Vec<Option<Cell>>],
    len: usize,
    end: usize,
    last: bool,
) -> Walk {
    let mut steps = Vec::with_capacity(len);
    let (mut v, mut m) = (end, last);
    for l in (1..=len).rev() {
        let cell = layers[l][2 * v + usize::from(m)].expect("reachable state");
        steps.push(Step {
            edge: cell.via,
            to: VertexId(v),
        });
        v = graph.edge(cell.via).other(VertexId(v)).0;
        m = !matched[cell.via.0];
    }
    steps.reverse();
    let mut walk = Walk::empty(VertexId(v));
    for s in steps {
        walk.push(s);
    }
    walk
}
