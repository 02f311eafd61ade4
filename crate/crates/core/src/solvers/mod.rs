//! Exact integral and fractional c-matching optimization, stability
//! decisions and LP-duality certificates.

mod branch;
pub mod flow;
mod fractional;
pub mod oracle;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CMatching, CapacitatedGraph, FractionalCMatching, GraphError};
use crate::rational::{Rational, ScaleOverflow};

pub use branch::max_weight_c_matching;
pub use fractional::{fractional_c_matching, fractional_value, FractionalSolution};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scale(#[from] ScaleOverflow),
    #[error("instance too large for {what}: {got} > {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("fractional matching violates the capacity or box constraints")]
    InfeasiblePrimal,
    #[error("vertex cover violates nonnegativity or an edge constraint")]
    InfeasibleCover,
}

/// Feasible point of the dual LP: `y` per vertex, `z` per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalVertexCover {
    #[serde(with = "crate::rational::serde_frac_vec")]
    pub y: Vec<Rational>,
    #[serde(with = "crate::rational::serde_frac_vec")]
    pub z: Vec<Rational>,
}

/// Outcome of [`verify_fractional_vertex_cover`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverCheck {
    pub feasible: bool,
    /// `sum c_v y_v + sum z_e`.
    pub value: Rational,
}

/// Both optima with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityCertificate {
    pub nu_c: Rational,
    pub nu_fc: Rational,
    pub integral: CMatching,
    pub fractional: FractionalCMatching,
    pub cover: FractionalVertexCover,
    pub stable: bool,
}

pub fn is_stable_graph(graph: &CapacitatedGraph) -> Result<StabilityCertificate, SolverError> {
    let (integral, nu_c) = max_weight_c_matching(graph)?;
    let frac = fractional_c_matching(graph)?;
    Ok(StabilityCertificate {
        stable: nu_c == frac.value,
        nu_c,
        nu_fc: frac.value,
        integral,
        fractional: frac.x,
        cover: frac.cover,
    })
}

pub fn is_maximum_c_matching(graph: &CapacitatedGraph, matching: &CMatching) -> Result<bool, SolverError> {
    let ids: Vec<_> = matching.edges().iter().copied().collect();
    if !graph.is_c_matching(&ids)? {
        return Err(CMatching::new(graph, ids).unwrap_err().into());
    }
    let (_, best) = max_weight_c_matching(graph)?;
    Ok(matching.weight(graph) == best)
}

fn check_dims(graph: &CapacitatedGraph, cover: &FractionalVertexCover) -> Result<(), GraphError> {
    if cover.y.len() != graph.vertex_count() {
        return Err(GraphError::DimensionMismatch {
            expected: graph.vertex_count(),
            got: cover.y.len(),
        });
    }
    if cover.z.len() != graph.edge_count() {
        return Err(GraphError::DimensionMismatch {
            expected: graph.edge_count(),
            got: cover.z.len(),
        });
    }
    Ok(())
}

pub fn verify_fractional_vertex_cover(
    graph: &CapacitatedGraph,
    cover: &FractionalVertexCover,
) -> Result<CoverCheck, SolverError> {
    check_dims(graph, cover)?;
    let zero = Rational::zero();
    let nonneg = cover.y.iter().chain(&cover.z).all(|v| *v >= zero);
    let covers = graph.edge_ids().all(|e| {
        let edge = graph.edge(e);
        cover.y[edge.u.0] + cover.y[edge.v.0] + cover.z[e.0] >= edge.weight
    });
    let value = graph
        .vertex_ids()
        .map(|v| cover.y[v.0] * Rational::from_integer(graph.capacity(v) as i128))
        .sum::<Rational>()
        + cover.z.iter().sum::<Rational>();
    Ok(CoverCheck {
        feasible: nonneg && covers,
        value,
    })
}

/// Complementary slackness between a feasible primal and a feasible cover.
/// A `true` answer certifies that both are optimal.
pub fn check_complementary_slackness(
    graph: &CapacitatedGraph,
    x: &FractionalCMatching,
    cover: &FractionalVertexCover,
) -> Result<bool, SolverError> {
    if x.values.len() != graph.edge_count() {
        return Err(GraphError::DimensionMismatch {
            expected: graph.edge_count(),
            got: x.values.len(),
        }
        .into());
    }
    if !x.is_feasible(graph) {
        return Err(SolverError::InfeasiblePrimal);
    }
    if !verify_fractional_vertex_cover(graph, cover)?.feasible {
        return Err(SolverError::InfeasibleCover);
    }
    let zero = Rational::zero();
    let edges_ok = graph.edge_ids().all(|e| {
        let edge = graph.edge(e);
        let xe = x.values[e.0];
        let tight = cover.y[edge.u.0] + cover.y[edge.v.0] + cover.z[e.0] == edge.weight;
        (xe == zero || tight) && (cover.z[e.0] == zero || xe == Rational::one())
    });
    let vertices_ok = graph.vertex_ids().all(|v| {
        let load: Rational = graph.incident(v).iter().map(|e| x.values[e.0]).sum();
        cover.y[v.0] == zero || load == Rational::from_integer(graph.capacity(v) as i128)
    });
    Ok(edges_ok && vertices_ok)
}
