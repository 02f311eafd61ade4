//! A capacitated game whose core is non-empty although no stable bargaining
//! outcome exists, plus an allocation blocked by a coalition.

use capmatch::fixtures;
use capmatch::games::{check_core_allocation, divergence_demo};
use capmatch::rational::Rational;

fn main() {
    let report = divergence_demo().expect("solver");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let triangle = fixtures::triangle().graph;
    let half = Rational::new(1, 2);
    let check = check_core_allocation(&triangle, &[half, half, Rational::from_integer(0)]).expect("small game");
    println!("triangle (1/2, 1/2, 0) in core: {}, blocked by {:?}", check.in_core, check.violating);
}
