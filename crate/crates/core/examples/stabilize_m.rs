//! Minimum vertex-stabilizer preserving a maximum c-matching, with the
//! iteration trace and a cross-check against exhaustive search.

use capmatch::fixtures;
use capmatch::stabilizer::{m_vertex_stabilizer, m_vertex_stabilizer_bruteforce, StabilizerOptions};

fn main() {
    let instance = fixtures::fig1();
    let result = m_vertex_stabilizer(&instance, StabilizerOptions::default()).expect("maximum matching");
    for entry in &result.trace {
        println!("{:>5}  {:?}  removed {:?}", entry.exposed, entry.case, entry.removed);
    }
    println!("outcome: {}", serde_json::to_string(&result.outcome).unwrap());
    if let Some(check) = &result.certificate {
        println!("w(M) = {}, fractional optimum after removal = {}", check.matching_weight, check.fractional_value);
    }
    let oracle = m_vertex_stabilizer_bruteforce(&instance).expect("small instance");
    println!("exhaustive minimum size: {:?}", oracle.map(|s| s.len()));
}
