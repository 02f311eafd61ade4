//! The 2-approximate stabilizer for matchings that need not be maximum,
//! on the smallest instance where the factor 2 is attained.

use capmatch::fixtures;
use capmatch::stabilizer::{m_vertex_stabilizer_bruteforce, m_vertex_stabilizer_relaxed};

fn main() {
    // A single unit edge with the empty matching.
    let instance = fixtures::single_edge();
    let result = m_vertex_stabilizer_relaxed(&instance).expect("valid matching");
    let removed = result.removed().expect("always stabilizable");
    let optimum = m_vertex_stabilizer_bruteforce(&instance).expect("small").expect("feasible");
    println!("relaxed removes {removed:?}");
    println!("optimum removes {} vertex", optimum.len());
}
