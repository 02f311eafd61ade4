//! Named instances reproducing the worked examples.

use num_traits::One;

use crate::graph::{CMatching, CapacitatedGraph, Instance};
use crate::rational::Rational;

use super::GenError;

pub const NAMES: &[&str] = &[
    "fig1",
    "fig5",
    "triangle",
    "c5",
    "single-edge",
    "path3",
    "k4",
];

pub fn fixture(name: &str) -> Result<Instance, GenError> {
    Ok(match name {
        "fig1" => fig1(),
        "fig5" => fig5(),
        "triangle" => triangle(),
        "c5" => cycle(5),
        "single-edge" => single_edge(),
        "path3" => path3(),
        "k4" => k4(),
        other => return Err(GenError::UnknownFixture(other.to_string())),
    })
}

fn build(vertices: &[(&str, i64)], edges: &[(&str, &str, Rational)], matching: &[(&str, &str)]) -> Instance {
    let graph = CapacitatedGraph::validate(vertices, edges).expect("fixture is well formed");
    if matching.is_empty() {
        return Instance::new(graph);
    }
    let ids = matching
        .iter()
        .map(|(a, b)| graph.edge_by_names(a, b).expect("fixture matching edge"));
    let m = CMatching::new(&graph, ids).expect("fixture matching is a c-matching");
    Instance::with_matching(graph, m)
}

/// Nine-vertex instance whose auxiliary graph is not maximum even though the
/// matching is: capacities 1 except `v`, `x`, `b` (2), weights 1 except `bc`.
pub fn fig1() -> Instance {
    let one = Rational::one();
    build(
        &[
            ("t", 1),
            ("u", 1),
            ("v", 2),
            ("x", 2),
            ("y", 1),
            ("z", 1),
            ("a", 1),
            ("b", 2),
            ("c", 1),
        ],
        &[
            ("t", "u", one),
            ("u", "v", one),
            ("v", "x", one),
            ("x", "y", one),
            ("x", "z", one),
            ("y", "z", one),
            ("a", "b", one),
            ("b", "c", Rational::new(1, 2)),
            ("c", "v", one),
        ],
        &[("u", "v"), ("x", "y"), ("x", "z"), ("a", "b"), ("c", "v")],
    )
}

/// Four-vertex unstable graph with a non-empty core, with the maximum
/// c-matching `{12, 13, 23}` attached.
pub fn fig5() -> Instance {
    let one = Rational::one();
    build(
        &[("1", 2), ("2", 2), ("3", 2), ("4", 1)],
        &[
            ("1", "2", one),
            ("1", "3", one),
            ("2", "3", one),
            ("2", "4", one),
            ("3", "4", one),
        ],
        &[("1", "2"), ("1", "3"), ("2", "3")],
    )
}

/// Unit-weight, unit-capacity triangle.
pub fn triangle() -> Instance {
    cycle(3)
}

/// Unit-weight, unit-capacity cycle on `n` vertices named `0..n`.
pub fn cycle(n: usize) -> Instance {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let vertices: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    let edges: Vec<(&str, &str, Rational)> = (0..n)
        .map(|i| (names[i].as_str(), names[(i + 1) % n].as_str(), Rational::one()))
        .collect();
    build(&vertices, &edges, &[])
}

pub fn single_edge() -> Instance {
    build(&[("u", 1), ("v", 1)], &[("u", "v", Rational::one())], &[])
}

/// Path `u - v - w`, unit weights and capacities.
pub fn path3() -> Instance {
    let one = Rational::one();
    build(
        &[("u", 1), ("v", 1), ("w", 1)],
        &[("u", "v", one), ("v", "w", one)],
        &[],
    )
}

pub fn k4() -> Instance {
    let one = Rational::one();
    let names = ["a", "b", "c", "d"];
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((names[i], names[j], one));
        }
    }
    build(&names.map(|n| (n, 1)), &edges, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_shape() {
        let inst = fig1();
        assert_eq!(inst.graph.vertex_count(), 9);
        assert_eq!(inst.graph.edge_count(), 9);
        let bc = inst.graph.edge_by_names("b", "c").unwrap();
        assert_eq!(inst.graph.weight_of(bc), Rational::new(1, 2));
        assert_eq!(inst.matching.unwrap().len(), 5);
    }

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(fixture(name).is_ok(), "{name}");
        }
        assert!(matches!(fixture("fig9"), Err(GenError::UnknownFixture(_))));
    }

    #[test]
    fn triangle_is_unit_c3() {
        let t = triangle();
        assert_eq!(t.graph.vertex_count(), 3);
        assert_eq!(t.graph.edge_count(), 3);
        assert!(t.graph.vertices().iter().all(|v| v.capacity == 1));
    }
}
