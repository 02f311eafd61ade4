//! Exhaustive reference solvers used to cross-check the fast ones.

use num_traits::Zero;

use crate::graph::{CMatching, CapacitatedGraph, EdgeId};
use crate::rational::Rational;

use super::fractional::scaled_instance;
use super::SolverError;

pub const FRACTIONAL_ORACLE_MAX_EDGES: usize = 14;
pub const MATCHING_ORACLE_MAX_EDGES: usize = 24;

/// Maximum of `w.x` over `x in {0, 1/2, 1}^E` within the capacities, by
/// enumeration.
pub fn fractional_oracle(graph: &CapacitatedGraph) -> Result<Rational, SolverError> {
    let m = graph.edge_count();
    if m > FRACTIONAL_ORACLE_MAX_EDGES {
        return Err(SolverError::TooLarge {
            what: "fractional oracle",
            limit: FRACTIONAL_ORACLE_MAX_EDGES,
            got: m,
        });
    }
    if m == 0 {
        return Ok(Rational::zero());
    }
    let (scaled, edges, caps) = scaled_instance(graph)?;
    // Work with doubled values: 2x in {0,1,2}, load bounded by 2c.
    let mut load: Vec<i64> = vec![0; graph.vertex_count()];
    let limit: Vec<i64> = caps.iter().map(|c| 2 * c).collect();
    let mut best = 0i128;
    fn rec(
        k: usize,
        edges: &[(usize, usize, i128)],
        load: &mut [i64],
        limit: &[i64],
        acc: i128,
        best: &mut i128,
    ) {
        if k == edges.len() {
            *best = (*best).max(acc);
            return;
        }
        let (u, v, w) = edges[k];
        for t in 0..=2i64 {
            if load[u] + t > limit[u] || load[v] + t > limit[v] {
                break;
            }
            load[u] += t;
            load[v] += t;
            rec(k + 1, edges, load, limit, acc + w * t as i128, best);
            load[u] -= t;
            load[v] -= t;
        }
    }
    rec(0, &edges, &mut load, &limit, 0, &mut best);
    Ok(Rational::new(best, 2 * scaled.denominator))
}

/// Maximum-weight c-matching by enumerating every edge subset that respects
/// the capacities.
pub fn exhaustive_max_c_matching(graph: &CapacitatedGraph) -> Result<(CMatching, Rational), SolverError> {
    let m = graph.edge_count();
    if m > MATCHING_ORACLE_MAX_EDGES {
        return Err(SolverError::TooLarge {
            what: "matching oracle",
            limit: MATCHING_ORACLE_MAX_EDGES,
            got: m,
        });
    }
    let (scaled, edges, mut caps) = scaled_instance(graph)?;
    let mut best = (0i128, Vec::new());
    fn rec(
        k: usize,
        edges: &[(usize, usize, i128)],
        caps: &mut [i64],
        chosen: &mut Vec<usize>,
        acc: i128,
        best: &mut (i128, Vec<usize>),
    ) {
        if k == edges.len() {
            if acc > best.0 {
                *best = (acc, chosen.clone());
            }
            return;
        }
        let (u, v, w) = edges[k];
        if caps[u] > 0 && caps[v] > 0 {
            caps[u] -= 1;
            caps[v] -= 1;
            chosen.push(k);
            rec(k + 1, edges, caps, chosen, acc + w, best);
            chosen.pop();
            caps[u] += 1;
            caps[v] += 1;
        }
        rec(k + 1, edges, caps, chosen, acc, best);
    }
    rec(0, &edges, &mut caps, &mut Vec::new(), 0, &mut best);
    let matching = CMatching::new(graph, best.1.iter().map(|&i| EdgeId(i)))?;
    Ok((matching, scaled.unscale(best.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn oracle_values() {
        let g5 = fixtures::fig5().graph;
        assert_eq!(fractional_oracle(&g5).unwrap(), Rational::new(7, 2));
        assert_eq!(exhaustive_max_c_matching(&g5).unwrap().1, Rational::from_integer(3));
        let tri = fixtures::triangle().graph;
        assert_eq!(fractional_oracle(&tri).unwrap(), Rational::new(3, 2));
        let empty = CapacitatedGraph::validate(&[("a", 1)], &[]).unwrap();
        assert_eq!(fractional_oracle(&empty).unwrap(), Rational::zero());
    }

    #[test]
    fn oracle_rejects_large_instances() {
        let names: Vec<String> = (0..8).map(|i| i.to_string()).collect();
        let vertices: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), 3)).collect();
        let mut edges = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                edges.push((names[i].as_str(), names[j].as_str(), Rational::from_integer(1)));
            }
        }
        let g = CapacitatedGraph::validate(&vertices, &edges).unwrap();
        assert!(matches!(fractional_oracle(&g), Err(SolverError::TooLarge { .. })));
    }
}
