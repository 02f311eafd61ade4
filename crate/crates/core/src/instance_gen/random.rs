//! Seeded random instances.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, which is
//! specified independently of platform and word size, so a seed always
//! produces the same instance.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{CMatching, CapacitatedGraph, EdgeId, Instance};
use crate::rational::Rational;
use crate::solvers::max_weight_c_matching;

use super::GenError;

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    /// Probability that each vertex pair is joined, in `[0, 1]`.
    pub density: f64,
    /// Inclusive capacity range.
    pub cap_min: u32,
    pub cap_max: u32,
    /// Edge weights are drawn uniformly from this set.
    pub weights: Vec<Rational>,
    pub seed: u64,
}

impl RandomParams {
    pub fn new(n: usize, density: f64, caps: (u32, u32), weights: Vec<Rational>, seed: u64) -> Self {
        RandomParams {
            n,
            density,
            cap_min: caps.0,
            cap_max: caps.1,
            weights,
            seed,
        }
    }

    fn check(&self) -> Result<(), GenError> {
        let bad = |msg: &str| Err(GenError::InvalidParameters(msg.to_string()));
        if !(0.0..=1.0).contains(&self.density) {
            return bad("density must lie in [0, 1]");
        }
        if self.cap_min > self.cap_max {
            return bad("empty capacity range");
        }
        if self.weights.is_empty() {
            return bad("empty weight set");
        }
        if self.weights.iter().any(|w| *w < Rational::from_integer(0)) {
            return bad("negative weight");
        }
        if self.n > 10_000 {
            return bad("at most 10000 vertices");
        }
        Ok(())
    }
}

/// Random graph: every pair `i < j` is an edge with probability `density`;
/// capacities uniform in the range (then clamped to degrees), weights
/// uniform over the set.
pub fn gen_random(params: &RandomParams) -> Result<Instance, GenError> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let names: Vec<String> = (0..params.n).map(|i| format!("v{i}")).collect();
    let caps: Vec<i64> = (0..params.n)
        .map(|_| rng.gen_range(params.cap_min..=params.cap_max) as i64)
        .collect();
    let mut edges = Vec::new();
    for i in 0..params.n {
        for j in i + 1..params.n {
            if rng.gen_bool(params.density) {
                let w = params.weights[rng.gen_range(0..params.weights.len())];
                edges.push((names[i].as_str(), names[j].as_str(), w));
            }
        }
    }
    let vertices: Vec<(&str, i64)> = names.iter().map(|s| s.as_str()).zip(caps).collect();
    let graph = CapacitatedGraph::validate(&vertices, &edges).expect("generated graph is simple");
    Ok(Instance::new(graph))
}

/// Attaches a maximum-weight c-matching chosen by solving the instance under
/// a seeded random edge order, so that different seeds reach different
/// optima.
pub fn with_random_maximum_matching(instance: Instance, seed: u64) -> Result<Instance, GenError> {
    let graph = instance.graph;
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let vertices: Vec<(&str, i64)> = graph
        .vertices()
        .iter()
        .map(|v| (v.id.as_str(), v.capacity as i64))
        .collect();
    let edges: Vec<(&str, &str, Rational)> = order
        .iter()
        .map(|&i| {
            let e = &graph.edges()[i];
            (graph.name(e.u), graph.name(e.v), e.weight)
        })
        .collect();
    let permuted = CapacitatedGraph::validate(&vertices, &edges).expect("permutation of a valid graph");
    let (m, _) = max_weight_c_matching(&permuted)?;
    let ids: BTreeSet<EdgeId> = m.edges().iter().map(|e| EdgeId(order[e.0])).collect();
    let matching = CMatching::new(&graph, ids).expect("edge relabelling keeps a c-matching");
    Ok(Instance::with_matching(graph, matching))
}

/// Random c-matching: edges visited in random order, each taken with
/// probability `keep` when both endpoints still have room.
pub fn random_c_matching(graph: &CapacitatedGraph, keep: f64, seed: u64) -> Result<CMatching, GenError> {
    if !(0.0..=1.0).contains(&keep) {
        return Err(GenError::InvalidParameters("keep probability must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<EdgeId> = graph.edge_ids().collect();
    order.shuffle(&mut rng);
    let mut room: Vec<u32> = graph.vertices().iter().map(|v| v.capacity).collect();
    let mut chosen = BTreeSet::new();
    for e in order {
        let edge = graph.edge(e);
        if room[edge.u.0] > 0 && room[edge.v.0] > 0 && rng.gen_bool(keep) {
            room[edge.u.0] -= 1;
            room[edge.v.0] -= 1;
            chosen.insert(e);
        }
    }
    Ok(CMatching::new(graph, chosen).expect("capacities respected by construction"))
}
