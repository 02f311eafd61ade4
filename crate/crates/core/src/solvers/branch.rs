//! Maximum-weight c-matching by branch-and-bound.
//!
//! Each node fixes some edges in or out. The residual instance (free edges,
//! residual capacities) is bounded by its fractional optimum; when that
//! optimum happens to be integral it is also the best completion and the node
//! closes. Otherwise the node branches on the first free edge carrying a
//! fractional value, trying inclusion first.

use std::collections::BTreeSet;

use crate::graph::{CMatching, CapacitatedGraph, EdgeId};
use crate::rational::Rational;

use super::fractional::{scaled_instance, solve_double_cover};
use super::SolverError;

struct Search<'a> {
    n: usize,
    edges: &'a [(usize, usize, i128)],
    /// Best value found, doubled, in scaled units.
    best_twice: i128,
    best: Vec<usize>,
}

impl Search<'_> {
    fn explore(&mut self, free: &[usize], caps: &mut [i64], chosen: &mut Vec<usize>, value: i128) {
        let live: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&i| {
                let (u, v, w) = self.edges[i];
                w > 0 && caps[u] > 0 && caps[v] > 0
            })
            .collect();
        let sub: Vec<(usize, usize, i128)> = live.iter().map(|&i| self.edges[i]).collect();
        let sol = solve_double_cover(self.n, &sub, caps);
        if 2 * value + sol.twice_value <= self.best_twice {
            return;
        }
        if sol.is_integral() {
            self.best_twice = 2 * value + sol.twice_value;
            self.best = chosen.clone();
            self.best
                .extend(live.iter().zip(&sol.flows).filter(|(_, f)| f.0 == 1).map(|(&i, _)| i));
            return;
        }
        let pos = sol
            .flows
            .iter()
            .position(|(a, b)| a != b)
            .expect("non-integral solution has a fractional edge");
        let pick = live[pos];
        let rest: Vec<usize> = live.iter().copied().filter(|&i| i != pick).collect();
        let (u, v, w) = self.edges[pick];
        caps[u] -= 1;
        caps[v] -= 1;
        chosen.push(pick);
        self.explore(&rest, caps, chosen, value + w);
        chosen.pop();
        caps[u] += 1;
        caps[v] += 1;
        self.explore(&rest, caps, chosen, value);
    }
}

/// Optimal c-matching and its weight. Deterministic: the same graph always
/// yields the same witness.
pub fn max_weight_c_matching(graph: &CapacitatedGraph) -> Result<(CMatching, Rational), SolverError> {
    if graph.edge_count() == 0 {
        return Ok((CMatching::empty(), Rational::from_integer(0)));
    }
    let (scaled, edges, mut caps) = scaled_instance(graph)?;
    let mut search = Search {
        n: graph.vertex_count(),
        edges: &edges,
        best_twice: -1,
        best: Vec::new(),
    };
    let free: Vec<usize> = (0..edges.len()).collect();
    search.explore(&free, &mut caps, &mut Vec::new(), 0);
    let chosen: BTreeSet<EdgeId> = search.best.iter().map(|&i| EdgeId(i)).collect();
    let matching = CMatching::from_set_unchecked(chosen);
    debug_assert!(graph.is_c_matching(matching.edges()).unwrap_or(false));
    Ok((matching, scaled.unscale(search.best_twice / 2)))
}
