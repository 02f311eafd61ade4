//! Basic augmenting structures and the decomposition of a feasible
//! augmenting walk into one of them.
//!
//! Decomposition peels the walk. With `x_0..x_k` its vertices, let `(i, j)`
//! be the first repetition `x_i = x_j`, so `C = x_i..x_j` is a simple cycle
//! and `x_0..x_i` a simple path.
//!
//! * `C` even: if `C` gains, it is an augmenting cycle. Otherwise removing
//!   `C` leaves an alternating walk with the same endpoints, end edges of the
//!   same kind, and gain no smaller, so the walk stays feasible and
//!   augmenting; repeat on it.
//! * `C` odd: `C` is a blossom with stem `x_0..x_i`, a flower rooted at the
//!   start. If that flower does not gain, the same analysis from the end of
//!   the walk gives a blossom `D` and a flower rooted at the end. If neither
//!   flower gains then, because twice the walk's gain splits into both flower
//!   gains plus the gain of `(X, D, X^-1, C)` with `X` the middle part, the
//!   latter is positive: an augmenting bi-cycle whenever its parts are
//!   disjoint.
//!
//! Any case the peeling cannot settle (overlapping blossoms, a middle part
//! that is not a path) is resolved by exhaustive search over the subgraph
//! spanned by the walk's edges. Every result passes [`classify_and_check`].

use std::collections::{BTreeSet, HashSet};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::graph::{CMatching, CapacitatedGraph, EdgeId, VertexId};
use crate::rational::Rational;

use super::{gain, is_alternating, is_feasible, is_proper_trail, Step, Walk, WalkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    ProperPath,
    Cycle,
    Flower,
    BiCycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicStructure {
    /// Simple path with distinct endpoints.
    ProperPath(Walk),
    /// Simple even cycle.
    Cycle(Walk),
    /// Path from the root to the base, and an odd cycle closed at the base.
    Flower { stem: Walk, blossom: Walk },
    /// Odd cycle `first` at one base, path to the other base, odd cycle
    /// `second` there.
    BiCycle { first: Walk, path: Walk, second: Walk },
}

impl BasicStructure {
    pub fn kind(&self) -> StructureKind {
        match self {
            BasicStructure::ProperPath(_) => StructureKind::ProperPath,
            BasicStructure::Cycle(_) => StructureKind::Cycle,
            BasicStructure::Flower { .. } => StructureKind::Flower,
            BasicStructure::BiCycle { .. } => StructureKind::BiCycle,
        }
    }

    /// Root of a flower.
    pub fn root(&self) -> Option<VertexId> {
        match self {
            BasicStructure::Flower { stem, .. } => Some(stem.start()),
            _ => None,
        }
    }

    /// The structure as one walk: the path or cycle itself,
    /// `(P, C, P^-1)` from the root for a flower, and `(P, D, P^-1, C)`
    /// from the first base for a bi-cycle.
    pub fn as_walk(&self) -> Walk {
        match self {
            BasicStructure::ProperPath(w) | BasicStructure::Cycle(w) => w.clone(),
            BasicStructure::Flower { stem, blossom } => stem
                .concat(blossom)
                .and_then(|w| w.concat(&stem.reversed()))
                .expect("flower parts connect"),
            BasicStructure::BiCycle { first, path, second } => path
                .concat(second)
                .and_then(|w| w.concat(&path.reversed()))
                .and_then(|w| w.concat(first))
                .expect("bi-cycle parts connect"),
        }
    }

    /// Every vertex touched by the structure.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.as_walk().vertices().into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: StructureKind,
    pub augmenting: bool,
    /// Left minus right side of the kind's augmenting inequality.
    pub gain: Rational,
}

fn malformed(msg: &str) -> WalkError {
    WalkError::Malformed(msg.to_string())
}

fn vertex_set(walk: &Walk) -> HashSet<VertexId> {
    walk.vertices().into_iter().collect()
}

fn check_blossom(walk: &Walk, matching: &CMatching, what: &str) -> Result<(), WalkError> {
    if !walk.is_closed() || !walk.is_simple() || walk.len().is_multiple_of(2) {
        return Err(WalkError::Malformed(format!("{what} is not an odd cycle")));
    }
    if !is_alternating(walk, matching) {
        return Err(WalkError::Malformed(format!("{what} is not alternating")));
    }
    let steps = walk.steps();
    if matching.contains(steps[0].edge) != matching.contains(steps[steps.len() - 1].edge) {
        return Err(WalkError::Malformed(format!("{what} has end edges of different kinds")));
    }
    Ok(())
}

fn check_simple_path(walk: &Walk, what: &str) -> Result<(), WalkError> {
    if walk.is_closed() || !walk.is_simple() {
        return Err(WalkError::Malformed(format!("{what} is not a simple path")));
    }
    Ok(())
}

/// Validates the shape of a structure and evaluates its augmenting
/// inequality.
pub fn classify_and_check(
    graph: &CapacitatedGraph,
    structure: &BasicStructure,
    matching: &CMatching,
) -> Result<Classification, WalkError> {
    match structure {
        BasicStructure::ProperPath(w) => {
            if w.is_empty() {
                return Err(malformed("path has no edges"));
            }
            check_simple_path(w, "path")?;
            if !is_alternating(w, matching) {
                return Err(malformed("path is not alternating"));
            }
            if !is_proper_trail(graph, w, matching) {
                return Err(malformed("path is not proper"));
            }
            if !is_feasible(graph, w, matching) {
                return Err(malformed("path is not feasible"));
            }
        }
        BasicStructure::Cycle(w) => {
            if !w.is_closed() || !w.is_simple() || w.len() % 2 == 1 {
                return Err(malformed("cycle is not a simple even cycle"));
            }
            if !is_alternating(w, matching) {
                return Err(malformed("cycle is not alternating"));
            }
        }
        BasicStructure::Flower { stem, blossom } => {
            check_blossom(blossom, matching, "blossom")?;
            check_simple_path(stem, "stem")?;
            if stem.end() != blossom.start() {
                return Err(malformed("stem does not end at the blossom base"));
            }
            let shared = vertex_set(stem).intersection(&vertex_set(blossom)).count();
            if shared != 1 {
                return Err(malformed("stem meets the blossom outside its base"));
            }
            let whole = structure.as_walk();
            if !is_alternating(&whole, matching) {
                return Err(malformed("flower walk is not alternating"));
            }
            if !is_feasible(graph, &whole, matching) {
                return Err(malformed("flower walk is not feasible"));
            }
        }
        BasicStructure::BiCycle { first, path, second } => {
            check_blossom(first, matching, "first blossom")?;
            check_blossom(second, matching, "second blossom")?;
            check_simple_path(path, "connecting path")?;
            if path.start() != first.start() || path.end() != second.start() {
                return Err(malformed("connecting path does not join the bases"));
            }
            let (c, d, p) = (vertex_set(first), vertex_set(second), vertex_set(path));
            let cd = c.intersection(&d).count();
            if path.is_empty() {
                if cd != 1 {
                    return Err(malformed("blossoms sharing a base meet elsewhere"));
                }
            } else {
                if cd != 0 {
                    return Err(malformed("blossoms intersect"));
                }
                if p.intersection(&c).count() != 1 || p.intersection(&d).count() != 1 {
                    return Err(malformed("connecting path meets a blossom outside its base"));
                }
            }
            if !is_alternating(&structure.as_walk(), matching) {
                return Err(malformed("bi-cycle walk is not alternating"));
            }
        }
    }
    let g = gain(graph, &structure.as_walk(), matching);
    Ok(Classification {
        kind: structure.kind(),
        augmenting: g.is_positive(),
        gain: g,
    })
}

fn accept(graph: &CapacitatedGraph, s: BasicStructure, matching: &CMatching) -> Option<BasicStructure> {
    match classify_and_check(graph, &s, matching) {
        Ok(c) if c.augmenting => Some(s),
        _ => None,
    }
}

/// First repetition `(i, j)`: smallest `j` with `x_j = x_i` for some `i < j`.
fn first_repeat(walk: &Walk) -> Option<(usize, usize)> {
    let vs = walk.vertices();
    let mut pos = std::collections::HashMap::new();
    for (j, v) in vs.iter().enumerate() {
        if let Some(&i) = pos.get(v) {
            return Some((i, j));
        }
        pos.insert(*v, j);
    }
    None
}

fn splice(walk: &Walk, i: usize, j: usize) -> Walk {
    walk.subwalk(0, i)
        .concat(&walk.subwalk(j, walk.len()))
        .expect("x_i = x_j")
}

enum Peel {
    Found(BasicStructure),
    Shorter(Walk),
    Stuck,
}

fn peel(graph: &CapacitatedGraph, matching: &CMatching, walk: &Walk) -> Peel {
    let Some((i, j)) = first_repeat(walk) else {
        return match accept(graph, BasicStructure::ProperPath(walk.clone()), matching) {
            Some(s) => Peel::Found(s),
            None => Peel::Stuck,
        };
    };
    let cycle = walk.subwalk(i, j);
    if cycle.len().is_multiple_of(2) {
        if let Some(s) = accept(graph, BasicStructure::Cycle(cycle), matching) {
            return Peel::Found(s);
        }
        return Peel::Shorter(splice(walk, i, j));
    }
    let front = BasicStructure::Flower {
        stem: walk.subwalk(0, i),
        blossom: cycle.clone(),
    };
    if let Some(s) = accept(graph, front, matching) {
        return Peel::Found(s);
    }

    let k = walk.len();
    let rev = walk.reversed();
    let (ri, rj) = first_repeat(&rev).expect("a repeated vertex is seen from both ends");
    let back = rev.subwalk(ri, rj);
    if back.len().is_multiple_of(2) {
        if let Some(s) = accept(graph, BasicStructure::Cycle(back), matching) {
            return Peel::Found(s);
        }
        return Peel::Shorter(splice(&rev, ri, rj).reversed());
    }
    let flower = BasicStructure::Flower {
        stem: rev.subwalk(0, ri),
        blossom: back,
    };
    if let Some(s) = accept(graph, flower, matching) {
        return Peel::Found(s);
    }
    // The back blossom occupies steps k - rj .. k - ri of the walk.
    let (di, dj) = (k - rj, k - ri);
    if j <= di {
        let bi = BasicStructure::BiCycle {
            first: cycle,
            path: walk.subwalk(j, di),
            second: walk.subwalk(di, dj),
        };
        if let Some(s) = accept(graph, bi, matching) {
            return Peel::Found(s);
        }
    }
    Peel::Stuck
}

/// Finds a basic augmenting structure inside a feasible augmenting walk: a
/// feasible augmenting path between its endpoints (proper when they
/// differ), an augmenting cycle, an augmenting flower rooted at one of its
/// endpoints, or an augmenting bi-cycle.
pub fn decompose_to_basic_structure(
    graph: &CapacitatedGraph,
    matching: &CMatching,
    walk: &Walk,
) -> Result<BasicStructure, WalkError> {
    if walk.is_empty() || !is_alternating(walk, matching) {
        return Err(WalkError::NotAlternating);
    }
    if !gain(graph, walk, matching).is_positive() {
        return Err(WalkError::NotAugmenting);
    }
    if !is_feasible(graph, walk, matching) {
        return Err(WalkError::NotFeasible);
    }
    let mut current = walk.clone();
    loop {
        match peel(graph, matching, &current) {
            Peel::Found(s) => return Ok(s),
            Peel::Shorter(w) => current = w,
            Peel::Stuck => break,
        }
    }
    exhaustive::search(graph, matching, walk).ok_or(WalkError::NoStructure)
}

mod exhaustive {
    //! Brute-force search for a structure inside the walk's edge support.

    use super::*;

    const PATH_LIMIT: usize = 200_000;

    struct Support<'a> {
        graph: &'a CapacitatedGraph,
        matching: &'a CMatching,
        adj: Vec<Vec<EdgeId>>,
    }

    impl<'a> Support<'a> {
        fn new(graph: &'a CapacitatedGraph, matching: &'a CMatching, walk: &Walk) -> Self {
            let edges: BTreeSet<EdgeId> = walk.edges().collect();
            let mut adj = vec![Vec::new(); graph.vertex_count()];
            for &e in &edges {
                let edge = graph.edge(e);
                adj[edge.u.0].push(e);
                adj[edge.v.0].push(e);
            }
            Support { graph, matching, adj }
        }

        /// Every simple alternating path from `s` (including the empty one),
        /// in DFS order over increasing edge ids.
        fn paths_from(&self, s: VertexId) -> Vec<Walk> {
            let mut out = vec![Walk::empty(s)];
            let mut on_path = vec![false; self.graph.vertex_count()];
            on_path[s.0] = true;
            let mut current = Walk::empty(s);
            self.extend(&mut current, &mut on_path, &mut out);
            out
        }

        fn extend(&self, current: &mut Walk, on_path: &mut [bool], out: &mut Vec<Walk>) {
            if out.len() >= PATH_LIMIT {
                return;
            }
            let at = current.end();
            let last = current.steps().last().map(|s| self.matching.contains(s.edge));
            for &e in &self.adj[at.0] {
                if last == Some(self.matching.contains(e)) {
                    continue;
                }
                let to = self.graph.edge(e).other(at);
                if on_path[to.0] {
                    continue;
                }
                on_path[to.0] = true;
                current.push(Step { edge: e, to });
                out.push(current.clone());
                self.extend(current, on_path, out);
                current.steps.pop();
                on_path[to.0] = false;
            }
        }

        /// Simple cycles through `s`: simple paths from `s` closed by one
        /// more support edge.
        fn cycles_at(&self, s: VertexId, paths: &[Walk]) -> Vec<Walk> {
            let mut out = Vec::new();
            for p in paths.iter().filter(|p| p.len() >= 2) {
                let end = p.end();
                if let Some(&e) = self.adj[end.0]
                    .iter()
                    .find(|&&e| self.graph.edge(e).other(end) == s)
                {
                    if p.steps().last().map(|l| l.edge) == Some(e) {
                        continue;
                    }
                    let mut c = p.clone();
                    c.push(Step { edge: e, to: s });
                    if is_alternating(&c, self.matching) {
                        out.push(c);
                    }
                }
            }
            out
        }
    }

    pub(super) fn search(graph: &CapacitatedGraph, matching: &CMatching, walk: &Walk) -> Option<BasicStructure> {
        let support = Support::new(graph, matching, walk);
        let (u, v) = (walk.start(), walk.end());
        let vertices: Vec<VertexId> = graph.vertex_ids().filter(|x| !support.adj[x.0].is_empty()).collect();
        let paths: Vec<(VertexId, Vec<Walk>)> = vertices.iter().map(|&x| (x, support.paths_from(x))).collect();
        let paths_of = |x: VertexId| &paths.iter().find(|(y, _)| *y == x).expect("support vertex").1;
        let blossoms: Vec<Walk> = vertices
            .iter()
            .flat_map(|&x| support.cycles_at(x, paths_of(x)))
            .filter(|c| c.len() % 2 == 1)
            .filter(|c| check_blossom(c, matching, "blossom").is_ok())
            .collect();

        if u != v {
            for p in paths_of(u).iter().filter(|p| p.end() == v) {
                if let Some(s) = accept(graph, BasicStructure::ProperPath(p.clone()), matching) {
                    return Some(s);
                }
            }
        }
        for root in [u, v] {
            for stem in paths_of(root) {
                for blossom in blossoms.iter().filter(|b| b.start() == stem.end()) {
                    let s = BasicStructure::Flower {
                        stem: stem.clone(),
                        blossom: blossom.clone(),
                    };
                    if let Some(s) = accept(graph, s, matching) {
                        return Some(s);
                    }
                }
            }
        }
        for &x in &vertices {
            for c in support.cycles_at(x, paths_of(x)).into_iter().filter(|c| c.len() % 2 == 0) {
                if let Some(s) = accept(graph, BasicStructure::Cycle(c), matching) {
                    return Some(s);
                }
            }
        }
        for first in &blossoms {
            for path in paths_of(first.start()) {
                for second in blossoms.iter().filter(|d| d.start() == path.end()) {
                    let s = BasicStructure::BiCycle {
                        first: first.clone(),
                        path: path.clone(),
                        second: second.clone(),
                    };
                    if let Some(s) = accept(graph, s, matching) {
                        return Some(s);
                    }
                }
            }
        }
        None
    }
}
