//! Builds the hardness-reduction instance from an independent dominating set
//! instance and checks that removing a minimum such set stabilizes it.

use capmatch::graph::VertexId;
use capmatch::instance_gen::{build_mids_reduction, greedy_ids, mids_bruteforce, MidsInstance};
use capmatch::solvers::is_stable_graph;

fn main() {
    // path a - b - c
    let source = MidsInstance::from_edges(3, &[(0, 1), (1, 2)]);
    let reduced = build_mids_reduction(&source);
    println!(
        "reduced instance: {} vertices, {} edges, stable: {}",
        reduced.graph.vertex_count(),
        reduced.graph.edge_count(),
        is_stable_graph(&reduced.graph).expect("solver").stable
    );
    let best = mids_bruteforce(&source).expect("small source");
    println!("minimum independent dominating set: {best:?}, greedy: {:?}", greedy_ids(&source));
    let removed: Vec<VertexId> = best.iter().map(|&v| reduced.source_vertex(v)).collect();
    let (rest, _) = reduced.graph.without_vertices(&removed).expect("known vertices");
    println!("stable after removing it: {}", is_stable_graph(&rest).expect("solver").stable);
}
