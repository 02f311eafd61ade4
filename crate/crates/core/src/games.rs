//! Cooperative matching games and network bargaining: core membership,
//! stable-outcome existence and validation of concrete outcomes.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures;
use crate::graph::{CMatching, CapacitatedGraph, GraphError, VertexId};
use crate::rational::{Frac, Rational};
use crate::solvers::{fractional_c_matching, is_stable_graph, max_weight_c_matching, FractionalVertexCover, SolverError};

/// Coalition enumeration is exponential; refuse beyond this many players.
pub const CORE_MAX_VERTICES: usize = 16;

#[derive(Debug, Error)]
pub enum GamesError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("allocation entry for {0} is negative")]
    NegativeEntry(String),
    #[error("split for edge {0} is negative")]
    NegativeSplit(String),
    #[error("too many players for coalition enumeration: {got} > {limit}")]
    TooLarge { limit: usize, got: usize },
}

/// Result of checking an allocation against the core constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreCheck {
    pub total: Frac,
    pub nu_c: Frac,
    /// `false` means the allocation is not even a candidate: its total is not `nu_c`.
    pub total_matches: bool,
    pub in_core: bool,
    /// First coalition (by size, then lexicographically) earning less than it could secure.
    pub violating: Option<Vec<String>>,
    /// Value `nu_c(G[S])` of the violating coalition.
    pub violating_value: Option<Frac>,
}

fn check_dims(expected: usize, got: usize) -> Result<(), GraphError> {
    if expected != got {
        return Err(GraphError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Coalitions of `0..n` ordered by size, then lexicographically.
fn coalitions(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

pub fn check_core_allocation(graph: &CapacitatedGraph, allocation: &[Rational]) -> Result<CoreCheck, GamesError> {
    let n = graph.vertex_count();
    check_dims(n, allocation.len())?;
    if n > CORE_MAX_VERTICES {
        return Err(GamesError::TooLarge {
            limit: CORE_MAX_VERTICES,
            got: n,
        });
    }
    if let Some(v) = graph.vertex_ids().find(|v| allocation[v.0] < Rational::zero()) {
        return Err(GamesError::NegativeEntry(graph.name(v).to_string()));
    }
    let total: Rational = allocation.iter().sum();
    let (_, nu_c) = max_weight_c_matching(graph)?;
    let mut check = CoreCheck {
        total: Frac(total),
        nu_c: Frac(nu_c),
        total_matches: total == nu_c,
        in_core: false,
        violating: None,
        violating_value: None,
    };
    if !check.total_matches {
        return Ok(check);
    }
    for coalition in coalitions(n) {
        let keep: Vec<VertexId> = coalition.iter().map(|&i| VertexId(i)).collect();
        let share: Rational = coalition.iter().map(|&i| allocation[i]).sum();
        let sub = graph.induced_subgraph(&keep)?;
        if sub.edge_count() == 0 {
            continue;
        }
        let (_, value) = max_weight_c_matching(&sub)?;
        if share < value {
            check.violating = Some(keep.iter().map(|v| graph.name(*v).to_string()).collect());
            check.violating_value = Some(Frac(value));
            return Ok(check);
        }
    }
    check.in_core = true;
    Ok(check)
}

/// Core allocation built from an optimal fractional vertex cover:
/// `p_v = c_v y_v + (1/2) sum_{e at v} z_e`. Its total is `nu_f`, so it is a
/// core allocation whenever the graph is stable.
pub fn cover_allocation(graph: &CapacitatedGraph, cover: &FractionalVertexCover) -> Result<Vec<Rational>, GamesError> {
    check_dims(graph.vertex_count(), cover.y.len())?;
    check_dims(graph.edge_count(), cover.z.len())?;
    let half = Rational::new(1, 2);
    Ok(graph
        .vertex_ids()
        .map(|v| {
            let z: Rational = graph.incident(v).iter().map(|e| cover.z[e.0]).sum();
            cover.y[v.0] * Rational::from_integer(graph.capacity(v) as i128) + z * half
        })
        .collect())
}

/// Whether the capacitated bargaining game on `graph` has a stable outcome,
/// via the LP characterization `nu_c = nu_f`.
pub fn nbg_has_stable_outcome(graph: &CapacitatedGraph) -> Result<bool, GamesError> {
    Ok(is_stable_graph(graph)?.stable)
}

/// A set of deals and how each deal's value is split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbgOutcome {
    pub matching: CMatching,
    /// Per edge `(a_uv, a_vu)`, oriented like the stored edge.
    pub split: Vec<(Rational, Rational)>,
}

impl NbgOutcome {
    /// Every deal split evenly.
    pub fn even_split(graph: &CapacitatedGraph, matching: CMatching) -> Self {
        let half = Rational::new(1, 2);
        let split = graph
            .edge_ids()
            .map(|e| {
                if matching.contains(e) {
                    let w = graph.weight_of(e) * half;
                    (w, w)
                } else {
                    (Rational::zero(), Rational::zero())
                }
            })
            .collect();
        NbgOutcome { matching, split }
    }

    /// Earnings of `v` on edge `e` (which must touch `v`).
    fn share(&self, graph: &CapacitatedGraph, e: crate::graph::EdgeId, v: VertexId) -> Rational {
        let (a_uv, a_vu) = self.split[e.0];
        if graph.edge(e).u == v {
            a_uv
        } else {
            a_vu
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerReport {
    pub id: String,
    /// Lowest earnings among the player's deals; `0` when unsaturated.
    pub threshold: Frac,
    /// Best option over non-deal edges, if the player has any.
    pub outside_option: Option<Frac>,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeReport {
    pub consistent: bool,
    pub stable: bool,
    pub players: Vec<PlayerReport>,
}

/// What a player must be offered to accept one more deal: nothing if it has
/// spare capacity, otherwise at least its worst current deal.
fn threshold(graph: &CapacitatedGraph, outcome: &NbgOutcome, v: VertexId) -> Rational {
    let deals: Vec<Rational> = graph
        .incident(v)
        .iter()
        .filter(|e| outcome.matching.contains(**e))
        .map(|&e| outcome.share(graph, e, v))
        .collect();
    if deals.len() < graph.capacity(v) as usize {
        return Rational::zero();
    }
    deals.into_iter().min().unwrap_or_else(Rational::zero)
}

/// Checks consistency of the splits and stability against outside options.
/// The option of `u` via non-deal edge `uv` is `w_uv - threshold(v)`.
pub fn verify_outcome(graph: &CapacitatedGraph, outcome: &NbgOutcome) -> Result<OutcomeReport, GamesError> {
    check_dims(graph.edge_count(), outcome.split.len())?;
    let ids: Vec<_> = outcome.matching.edges().iter().copied().collect();
    let valid_matching = graph.is_c_matching(&ids)?;
    let zero = Rational::zero();
    if let Some(e) = graph
        .edge_ids()
        .find(|e| outcome.split[e.0].0 < zero || outcome.split[e.0].1 < zero)
    {
        return Err(GamesError::NegativeSplit(graph.edge_label(e)));
    }
    let splits_ok = graph.edge_ids().all(|e| {
        let (a, b) = outcome.split[e.0];
        if outcome.matching.contains(e) {
            a + b == graph.weight_of(e)
        } else {
            a.is_zero() && b.is_zero()
        }
    });
    let thresholds: Vec<Rational> = graph.vertex_ids().map(|v| threshold(graph, outcome, v)).collect();
    let players: Vec<PlayerReport> = graph
        .vertex_ids()
        .map(|u| {
            let option = graph
                .incident(u)
                .iter()
                .filter(|e| !outcome.matching.contains(**e))
                .map(|&e| graph.weight_of(e) - thresholds[graph.edge(e).other(u).0])
                .max();
            PlayerReport {
                id: graph.name(u).to_string(),
                threshold: Frac(thresholds[u.0]),
                outside_option: option.map(Frac),
                stable: option.is_none_or(|o| o <= thresholds[u.0]),
            }
        })
        .collect();
    let consistent = valid_matching && splits_ok;
    Ok(OutcomeReport {
        consistent,
        stable: consistent && players.iter().all(|p| p.stable),
        players,
    })
}

/// The capacitated instance whose core is non-empty although it has no
/// stable outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub vertices: Vec<String>,
    pub capacities: Vec<u32>,
    pub nu_c: Frac,
    pub nu_fc: Frac,
    pub stable: bool,
    pub nbg_has_stable_outcome: bool,
    pub maximum_matching: Vec<(String, String)>,
    /// Optimal fractional matching as `(u, v, x_uv)`.
    pub fractional: Vec<(String, String, Frac)>,
    #[serde(with = "crate::rational::serde_frac_vec")]
    pub allocation: Vec<Rational>,
    pub core: CoreCheck,
}

pub fn divergence_demo() -> Result<DivergenceReport, GamesError> {
    let graph = fixtures::fig5().graph;
    let cert = is_stable_graph(&graph)?;
    let frac = fractional_c_matching(&graph)?;
    let allocation: Vec<Rational> = [1, 1, 1, 0].iter().map(|&v| Rational::from_integer(v)).collect();
    let core = check_core_allocation(&graph, &allocation)?;
    let report = DivergenceReport {
        vertices: graph.vertices().iter().map(|v| v.id.clone()).collect(),
        capacities: graph.vertices().iter().map(|v| v.capacity).collect(),
        nu_c: Frac(cert.nu_c),
        nu_fc: Frac(cert.nu_fc),
        stable: cert.stable,
        nbg_has_stable_outcome: nbg_has_stable_outcome(&graph)?,
        maximum_matching: cert.integral.named_pairs(&graph),
        fractional: graph
            .edge_ids()
            .map(|e| {
                let edge = graph.edge(e);
                (
                    graph.name(edge.u).to_string(),
                    graph.name(edge.v).to_string(),
                    Frac(frac.x.values[e.0]),
                )
            })
            .collect(),
        allocation,
        core,
    };
    assert_eq!(report.nu_c.0, Rational::from_integer(3));
    assert_eq!(report.nu_fc.0, Rational::new(7, 2));
    assert!(!report.stable && !report.nbg_has_stable_outcome);
    assert!(report.core.in_core);
    debug_assert!(frac.x.values.iter().all(|x| *x <= Rational::one()));
    Ok(report)
}
