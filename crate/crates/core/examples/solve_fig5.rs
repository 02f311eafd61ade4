//! Integral and fractional optima of a small capacitated graph, with the
//! dual certificate that proves the fractional value optimal.

use capmatch::fixtures;
use capmatch::solvers::{check_complementary_slackness, is_stable_graph};

fn main() {
    let graph = fixtures::fig5().graph;
    let cert = is_stable_graph(&graph).expect("solver");
    println!("max-weight c-matching: {}", cert.nu_c);
    for (u, v) in cert.integral.named_pairs(&graph) {
        println!("  {u}-{v}");
    }
    println!("fractional optimum: {}", cert.nu_fc);
    for e in graph.edge_ids() {
        println!("  x[{}] = {}", graph.edge_label(e), cert.fractional.values[e.0]);
    }
    let optimal = check_complementary_slackness(&graph, &cert.fractional, &cert.cover).expect("feasible pair");
    println!("complementary slackness holds: {optimal}");
    println!("stable: {}", cert.stable);
}
