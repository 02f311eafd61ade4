//! Seeded random instances: runs the exact stabilizer on each and compares
//! with exhaustive search. Pass a seed count as the first argument.

use capmatch::graph::Instance;
use capmatch::instance_gen::{gen_random, with_random_maximum_matching, RandomParams};
use capmatch::rational::Rational;
use capmatch::stabilizer::{m_vertex_stabilizer, m_vertex_stabilizer_bruteforce, StabilizerOptions};

fn main() {
    let count: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    let weights = vec![Rational::new(1, 2), Rational::from_integer(1), Rational::from_integer(2)];
    let (mut agree, mut infeasible) = (0, 0);
    for seed in 0..count {
        let params = RandomParams::new(3 + (seed % 6) as usize, 0.5, (1, 3), weights.clone(), seed);
        let graph = gen_random(&params).expect("valid parameters").graph;
        let instance = with_random_maximum_matching(Instance::new(graph), seed).expect("solver");
        let fast = m_vertex_stabilizer(&instance, StabilizerOptions::default()).expect("maximum matching");
        let slow = m_vertex_stabilizer_bruteforce(&instance).expect("small instance");
        if fast.removed().map(<[String]>::len) == slow.as_ref().map(Vec::len) {
            agree += 1;
        }
        if slow.is_none() {
            infeasible += 1;
        }
    }
    println!("{agree}/{count} agree with exhaustive search ({infeasible} infeasible)");
}
