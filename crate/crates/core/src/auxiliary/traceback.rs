//! Traceback: turning a path whose image doubles back over an edge into a
//! closed walk at one of its endpoints.
//!
//! For `P = (u; e_1..e_k; v)` let `t` be the least index such that `e_t`
//! repeats an earlier `e_s` in the opposite direction (smallest such `s`).
//! Then `tb(P, u) = (e_1..e_t, e_{s-1}..e_1)` and
//! `tb(P, v) = (e_k..e_s, e_{t+1}..e_k)`.

use num_traits::Signed;

use crate::graph::{CMatching, CapacitatedGraph, Instance, VertexId};
use crate::walks::{epsilon_augmentation, gain, is_alternating, is_proper_trail, Walk};

use super::{AuxError, AuxiliaryBundle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    First,
    Last,
}

/// `(s, t)` in 0-based step indices.
fn opposite_repeat(walk: &Walk) -> Option<(usize, usize)> {
    let vs = walk.vertices();
    let steps = walk.steps();
    for t in 0..steps.len() {
        for s in 0..t {
            if steps[s].edge == steps[t].edge && vs[s] == vs[t + 1] {
                return Some((s, t));
            }
        }
    }
    None
}

pub fn traceback(walk: &Walk, endpoint: Endpoint) -> Result<Walk, AuxError> {
    let (s, t) = opposite_repeat(walk).ok_or(AuxError::NoOppositeRepeat)?;
    let k = walk.len();
    let joined = match endpoint {
        Endpoint::First => walk.subwalk(0, t + 1).concat(&walk.subwalk(0, s).reversed()),
        Endpoint::Last => walk.subwalk(s, k).reversed().concat(&walk.subwalk(t + 1, k)),
    };
    Ok(joined.expect("traceback pieces meet at the repeated edge"))
}

/// For a proper augmenting path of `G'` between two exposed copies of
/// distinct vertices, returns an endpoint (in the original graph) whose
/// traceback is a feasible augmenting walk, preferring the first endpoint.
///
/// The matching is expected to be maximum-weight; callers check that.
pub fn augmenting_traceback(
    instance: &Instance,
    bundle: &AuxiliaryBundle,
    path: &Walk,
) -> Result<(VertexId, Walk), AuxError> {
    let gp = &bundle.g_prime;
    let mp = &bundle.m_prime;
    let pre = |msg: &str| Err(AuxError::Precondition(msg.to_string()));
    if path.is_empty() || path.is_closed() || !path.is_simple() {
        return pre("input is not a path with distinct endpoints");
    }
    if !is_alternating(path, mp) || !gain(gp, path, mp).is_positive() {
        return pre("path is not augmenting");
    }
    if !is_proper_trail(gp, path, mp) {
        return pre("path is not proper");
    }
    if mp.covers(gp, path.start()) || mp.covers(gp, path.end()) {
        return pre("an endpoint copy is covered");
    }
    let (u, v) = (bundle.eta_vertex(path.start())?, bundle.eta_vertex(path.end())?);
    if u == v {
        return pre("endpoints are copies of the same vertex");
    }
    let image = bundle.eta_walk(&instance.graph, path)?;
    let m = instance.matching_or_empty();
    for (endpoint, vertex) in [(Endpoint::First, u), (Endpoint::Last, v)] {
        let tb = traceback(&image, endpoint)?;
        if is_feasible_augmenting(&instance.graph, &tb, &m) {
            return Ok((vertex, tb));
        }
    }
    Err(AuxError::NeitherAugmenting)
}

fn is_feasible_augmenting(graph: &CapacitatedGraph, walk: &Walk, m: &CMatching) -> bool {
    is_alternating(walk, m) && gain(graph, walk, m).is_positive() && epsilon_augmentation(graph, walk, m).is_feasible()
}
