//! Expands a capacitated instance into its unit-capacity auxiliary graph and
//! shows that a maximum c-matching can become non-maximum there: a feasible
//! augmenting walk exists from the exposed copy of `b`.

use capmatch::auxiliary::{augmenting_traceback, build_auxiliary};
use capmatch::fixtures;
use capmatch::walks::{decompose_to_basic_structure, BasicStructure, find_feasible_augmenting_walk, gain, walk_length_bound};

fn main() {
    let instance = fixtures::fig1();
    let bundle = build_auxiliary(&instance).expect("valid instance");
    let gp = &bundle.g_prime;
    println!("auxiliary graph: {} vertices, {} edges, |M'| = {}", gp.vertex_count(), gp.edge_count(), bundle.m_prime.len());

    for start in bundle.exposed_copies() {
        let found = find_feasible_augmenting_walk(gp, &bundle.m_prime, start, walk_length_bound(gp)).expect("unit graph");
        let Some(walk) = found else {
            println!("{}: no feasible augmenting walk", gp.name(start));
            continue;
        };
        println!("{}: {} (gain {})", gp.name(start), walk.label(gp), gain(gp, &walk, &bundle.m_prime));
        let structure = decompose_to_basic_structure(gp, &bundle.m_prime, &walk).expect("feasible walk");
        println!("  structure: {:?}", structure.kind());
        let BasicStructure::ProperPath(path) = structure else { continue };
        for tie in bundle.find_ties(&path).expect("path in auxiliary graph") {
            println!("  tie: {} / {}", gp.edge_label(tie.first), gp.edge_label(tie.second));
        }
        if let Ok((end, tb)) = augmenting_traceback(&instance, &bundle, &path) {
            println!("  augmenting traceback at {}: {}", instance.graph.name(end), tb.label(&instance.graph));
        }
    }
}
