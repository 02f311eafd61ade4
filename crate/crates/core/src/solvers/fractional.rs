//! Maximum-weight fractional c-matching through the bipartite double cover.
//!
//! Every vertex `v` is split into `v+` and `v-`, both with capacity `c_v`;
//! an edge `uv` becomes the two arcs `u+ v-` and `v+ u-`. A maximum-weight
//! integral b-matching of the cover has value `2 nu_f`, and averaging the two
//! arcs of each edge gives a half-integral optimum. The flow potentials give
//! an optimal fractional vertex cover by the same averaging.

use num_traits::Zero;

use crate::graph::{CapacitatedGraph, FractionalCMatching};
use crate::rational::{Rational, ScaledWeights};

use super::flow::{ArcRef, MinCostFlow};
use super::{FractionalVertexCover, SolverError};

/// Raw double-cover solution in scaled integer units.
#[derive(Debug, Clone)]
pub(crate) struct CoverSolution {
    /// `2 * nu_f` in scaled units.
    pub twice_value: i128,
    /// Flow on `(u+ v-, v+ u-)` per edge.
    pub flows: Vec<(i64, i64)>,
    /// `(y+, y-)` per vertex and `(z1, z2)` per edge, scaled.
    pub y_split: Vec<(i128, i128)>,
    pub z_split: Vec<(i128, i128)>,
}

impl CoverSolution {
    pub fn is_integral(&self) -> bool {
        self.flows.iter().all(|(a, b)| a == b)
    }
}

/// Solves the double cover of the graph on `n` vertices with the given
/// `(u, v, scaled weight)` edges and capacities.
pub(crate) fn solve_double_cover(n: usize, edges: &[(usize, usize, i128)], caps: &[i64]) -> CoverSolution {
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = MinCostFlow::new(2 * n + 2);
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for (v, &cap) in caps.iter().enumerate() {
        left.push(net.add_arc(source, v, cap, 0));
        right.push(net.add_arc(n + v, sink, cap, 0));
    }
    let arcs: Vec<(ArcRef, ArcRef)> = edges
        .iter()
        .map(|&(u, v, w)| (net.add_arc(u, n + v, 1, -w), net.add_arc(v, n + u, 1, -w)))
        .collect();
    let cost = net.minimize_cost(source, sink);
    let flows: Vec<(i64, i64)> = arcs.iter().map(|&(a, b)| (net.flow(a), net.flow(b))).collect();
    let p = net
        .potentials(source, sink)
        .expect("successive shortest paths leave no negative residual cycle");
    let y_split: Vec<(i128, i128)> = (0..n)
        .map(|v| (p[v].max(0), (-p[n + v]).max(0)))
        .collect();
    let z_split = edges
        .iter()
        .map(|&(u, v, w)| {
            let z1 = (w - y_split[u].0 - y_split[v].1).max(0);
            let z2 = (w - y_split[v].0 - y_split[u].1).max(0);
            (z1, z2)
        })
        .collect();
    CoverSolution {
        twice_value: -cost,
        flows,
        y_split,
        z_split,
    }
}

pub(crate) fn scaled_instance(graph: &CapacitatedGraph) -> Result<(ScaledWeights, Vec<(usize, usize, i128)>, Vec<i64>), SolverError> {
    let scaled = ScaledWeights::new(graph.edges().iter().map(|e| &e.weight).collect::<Vec<_>>())?;
    let edges = graph
        .edges()
        .iter()
        .zip(&scaled.values)
        .map(|(e, &w)| (e.u.0, e.v.0, w))
        .collect();
    let caps = graph.vertices().iter().map(|v| v.capacity as i64).collect();
    Ok((scaled, edges, caps))
}

/// Optimal fractional c-matching with its value and an optimal cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution {
    pub x: FractionalCMatching,
    pub value: Rational,
    pub cover: FractionalVertexCover,
}

pub fn fractional_c_matching(graph: &CapacitatedGraph) -> Result<FractionalSolution, SolverError> {
    let (scaled, edges, caps) = scaled_instance(graph)?;
    let sol = solve_double_cover(graph.vertex_count(), &edges, &caps);
    let half_unit = |v: i128| Rational::new(v, 2 * scaled.denominator);
    let x = FractionalCMatching {
        values: sol
            .flows
            .iter()
            .map(|&(a, b)| Rational::new((a + b) as i128, 2))
            .collect(),
    };
    let cover = FractionalVertexCover {
        y: sol.y_split.iter().map(|&(a, b)| half_unit(a + b)).collect(),
        z: sol.z_split.iter().map(|&(a, b)| half_unit(a + b)).collect(),
    };
    Ok(FractionalSolution {
        x,
        value: half_unit(sol.twice_value),
        cover,
    })
}

/// `nu_f^c` alone.
pub fn fractional_value(graph: &CapacitatedGraph) -> Result<Rational, SolverError> {
    if graph.edge_count() == 0 {
        return Ok(Rational::zero());
    }
    let (scaled, edges, caps) = scaled_instance(graph)?;
    let sol = solve_double_cover(graph.vertex_count(), &edges, &caps);
    Ok(Rational::new(sol.twice_value, 2 * scaled.denominator))
}
