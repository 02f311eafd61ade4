//! Seeded corpora and independent checks shared by the integration tests.
#![allow(dead_code)]

use capmatch::graph::{CMatching, CapacitatedGraph, Instance};
use capmatch::instance_gen::{gen_random, random_c_matching, with_random_maximum_matching, RandomParams};
use capmatch::rational::Rational;
use capmatch::solvers::is_maximum_c_matching;
use capmatch::walks::Walk;
use proptest::prelude::*;

pub fn weight_set() -> Vec<Rational> {
    vec![Rational::new(1, 2), Rational::from_integer(1), Rational::from_integer(2)]
}

pub const DENSITIES: [f64; 4] = [0.3, 0.5, 0.7, 0.9];

/// Graph number `seed` of a family with `n` cycling through `n_min..=n_max`.
pub fn corpus_graph(seed: u64, n_min: usize, n_max: usize, caps: (u32, u32)) -> CapacitatedGraph {
    let span = (n_max - n_min + 1) as u64;
    let n = n_min + (seed % span) as usize;
    let density = DENSITIES[(seed / span % DENSITIES.len() as u64) as usize];
    let params = RandomParams::new(n, density, caps, weight_set(), seed);
    gen_random(&params).expect("valid parameters").graph
}

/// Small instances with a maximum-weight c-matching attached.
pub fn maximum_corpus(count: u64, n_max: usize) -> impl Iterator<Item = (u64, Instance)> {
    (0..count).map(move |seed| {
        let g = corpus_graph(seed, 3, n_max, (1, 3));
        (seed, with_random_maximum_matching(Instance::new(g), seed).expect("solver"))
    })
}

/// Instances whose attached c-matching is valid but not maximum-weight.
pub fn non_maximum_corpus(count: usize, n_max: usize) -> Vec<(u64, Instance)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let g = corpus_graph(seed, 2, n_max, (1, 3));
        let keep = [0.0, 0.3, 0.6][(seed % 3) as usize];
        let m = random_c_matching(&g, keep, seed).expect("generator");
        if !is_maximum_c_matching(&g, &m).expect("solver") {
            out.push((seed, Instance::with_matching(g, m)));
        }
        seed += 1;
    }
    out
}

/// Feasibility of a walk by direct load accounting: pushing `eps` along the
/// walk changes the load of `v` by `eps * (unmatched incidences - matched
/// incidences)`, and the edge boxes allow some `eps > 0` for any alternating
/// walk. So the walk is feasible iff no saturated vertex gains load.
pub fn feasible_by_loads(graph: &CapacitatedGraph, walk: &Walk, m: &CMatching) -> bool {
    let mut delta = vec![0i64; graph.vertex_count()];
    let mut at = walk.start();
    for step in walk.steps() {
        let d = if m.contains(step.edge) { -1 } else { 1 };
        delta[at.0] += d;
        delta[step.to.0] += d;
        at = step.to;
    }
    graph
        .vertex_ids()
        .all(|v| delta[v.0] <= 0 || m.degree(graph, v) < graph.capacity(v) as usize)
}

/// Strategy: small graph as (vertex capacities, edge list with weight index).
pub fn small_graph(max_n: usize, max_cap: i64) -> impl Strategy<Value = CapacitatedGraph> {
    (2..=max_n)
        .prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            (
                proptest::collection::vec(0..=max_cap, n),
                proptest::collection::vec(proptest::option::weighted(0.5, 0usize..3), pairs.len()),
                Just(pairs),
            )
        })
        .prop_map(|(caps, picks, pairs)| {
            let names: Vec<String> = (0..caps.len()).map(|i| format!("v{i}")).collect();
            let vertices: Vec<(&str, i64)> = names.iter().map(String::as_str).zip(caps).collect();
            let ws = weight_set();
            let edges: Vec<(&str, &str, Rational)> = pairs
                .iter()
                .zip(picks)
                .filter_map(|(&(i, j), w)| w.map(|w| (names[i].as_str(), names[j].as_str(), ws[w])))
                .collect();
            CapacitatedGraph::validate(&vertices, &edges).expect("generated graph is valid")
        })
}

/// Strategy: small graph plus a random valid c-matching.
pub fn small_instance(max_n: usize, max_cap: i64) -> impl Strategy<Value = Instance> {
    (small_graph(max_n, max_cap), any::<u64>(), 0.0f64..1.0).prop_map(|(g, seed, keep)| {
        let m = random_c_matching(&g, keep, seed).expect("generator");
        Instance::with_matching(g, m)
    })
}
