//! M-vertex-stabilizers: the exact algorithm for maximum-weight matchings,
//! its 2-approximate relaxation for arbitrary matchings, and brute-force
//! oracles for both problems.

mod bruteforce;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::auxiliary::{build_auxiliary, remove_original_vertex, traceback, AuxError, AuxiliaryBundle, Endpoint};
use crate::graph::{CMatching, GraphError, Instance, VertexId};
use crate::rational::{Frac, Rational};
use crate::solvers::{fractional_value, is_maximum_c_matching, SolverError};
use crate::walks::{
    decompose_to_basic_structure, find_feasible_augmenting_walk, gain, is_alternating, walk_length_bound,
    BasicStructure, StructureKind, Walk, WalkError, WalkJson,
};

pub use bruteforce::{m_vertex_stabilizer_bruteforce, vertex_stabilizer_bruteforce, BRUTEFORCE_MAX_CANDIDATES};

#[derive(Debug, Error)]
pub enum StabilizerError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Aux(#[from] AuxError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("the matching is not a maximum-weight c-matching")]
    NotMaximum,
    #[error("too many candidate vertices for exhaustive search: {got} > {limit}")]
    TooLarge { limit: usize, got: usize },
    #[error("no traceback is augmenting for path {0}; the matching is probably not maximum")]
    NoAugmentingTraceback(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StabilizerOptions {
    /// Skip the maximum-weight check of the exact algorithm.
    pub trust_maximal: bool,
}

/// What an iteration of the main loop did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// No feasible augmenting walk from the copy; it leaves the queue.
    NoWalk,
    BothEndpointsCovered,
    /// Exactly one endpoint image is exposed and gets removed.
    OneEndpointExposed,
    SameOriginalVertex,
    AugmentingCycle,
    AugmentingBiCycle,
    FlowerAtStart,
    FlowerAtEnd,
    /// Proper path; the flags say which traceback was augmenting.
    Traceback { first: bool, second: bool },
    /// Proper path under a non-maximum matching: both endpoints go.
    RemoveBoth,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// Exposed copy processed in this iteration.
    pub exposed: String,
    /// Walk found in the auxiliary graph, if any.
    pub walk: Option<WalkJson>,
    pub structure: Option<StructureKind>,
    pub case: Case,
    /// Original vertices removed in this iteration.
    pub removed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Infeasible {
    /// A feasible augmenting walk whose end images are both covered.
    BothEndpointsCovered { walk: WalkJson },
    AugmentingCycle { walk: WalkJson },
    AugmentingBiCycle { walk: WalkJson },
    /// After the loop the fractional optimum still exceeds the matching.
    FractionalGap { matching_weight: Frac, fractional_value: Frac },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Stabilized { removed: Vec<String> },
    Infeasible(Infeasible),
}

/// Post-hoc check of the reduced instance: `w(M)` against `nu_f(G \ S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalCheck {
    pub matching_weight: Frac,
    pub fractional_value: Frac,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerResult {
    pub outcome: Outcome,
    pub trace: Vec<TraceEntry>,
    pub certificate: Option<FinalCheck>,
}

impl StabilizerResult {
    pub fn is_stabilized(&self) -> bool {
        matches!(self.outcome, Outcome::Stabilized { .. })
    }

    /// Removed vertex names, if stabilized.
    pub fn removed(&self) -> Option<&[String]> {
        match &self.outcome {
            Outcome::Stabilized { removed } => Some(removed),
            Outcome::Infeasible(_) => None,
        }
    }
}

/// Exact minimum M-vertex-stabilizer for a maximum-weight c-matching `M`.
pub fn m_vertex_stabilizer(instance: &Instance, options: StabilizerOptions) -> Result<StabilizerResult, StabilizerError> {
    let m = checked_matching(instance)?;
    if !options.trust_maximal && !is_maximum_c_matching(&instance.graph, &m)? {
        return Err(StabilizerError::NotMaximum);
    }
    run(instance, true)
}

/// Variant for arbitrary `M`: exact when `M` is maximum-weight, otherwise
/// within a factor 2 of the optimum.
pub fn m_vertex_stabilizer_relaxed(instance: &Instance) -> Result<StabilizerResult, StabilizerError> {
    let m = checked_matching(instance)?;
    let m_max = is_maximum_c_matching(&instance.graph, &m)?;
    run(instance, m_max)
}

fn checked_matching(instance: &Instance) -> Result<CMatching, StabilizerError> {
    let m = instance.matching_or_empty();
    CMatching::new(&instance.graph, m.edges().iter().copied())?;
    Ok(m)
}

struct State {
    instance: Instance,
    bundle: AuxiliaryBundle,
    /// Original id of each current vertex.
    alive: Vec<VertexId>,
    /// Current auxiliary vertices still to process, as (original vertex, copy index).
    queue: Vec<(VertexId, usize)>,
    removed: Vec<VertexId>,
}

impl State {
    fn current(&self, original: VertexId) -> Option<VertexId> {
        self.alive.iter().position(|&v| v == original).map(VertexId)
    }

    fn copy_vertex(&self, original: VertexId, k: usize) -> Option<VertexId> {
        self.current(original)
            .and_then(|c| self.bundle.copy_classes[c.0].get(k).copied())
    }

    fn original_of_copy(&self, copy: VertexId) -> VertexId {
        self.alive[self.bundle.vertex_eta[copy.0].0]
    }

    fn remove(&mut self, original: VertexId) -> Result<(), StabilizerError> {
        let Some(cur) = self.current(original) else { return Ok(()) };
        let (bundle, instance) = remove_original_vertex(&self.bundle, &self.instance, cur)?;
        self.bundle = bundle;
        self.instance = instance;
        self.alive.remove(cur.0);
        self.queue.retain(|&(v, _)| v != original);
        self.removed.push(original);
        Ok(())
    }

    fn covered(&self, original: VertexId) -> bool {
        let cur = self.current(original).expect("vertex still present");
        self.instance.matching_or_empty().covers(&self.instance.graph, cur)
    }
}

fn run(instance: &Instance, m_max: bool) -> Result<StabilizerResult, StabilizerError> {
    let bundle = build_auxiliary(instance)?;
    let queue = bundle
        .exposed_copies()
        .into_iter()
        .map(|c| {
            let orig = bundle.vertex_eta[c.0];
            let k = bundle.copy_classes[orig.0].iter().position(|&x| x == c).expect("copy in class");
            (orig, k)
        })
        .collect();
    let mut st = State {
        instance: instance.clone(),
        bundle,
        alive: instance.graph.vertex_ids().collect(),
        queue,
        removed: Vec::new(),
    };
    let names = |vs: &[VertexId]| -> Vec<String> { vs.iter().map(|v| instance.graph.name(*v).to_string()).collect() };
    let mut trace = Vec::new();

    while let Some(&(orig, k)) = st.queue.first() {
        let start = st.copy_vertex(orig, k).expect("queued copy is present");
        let gp = &st.bundle.g_prime;
        let label = gp.name(start).to_string();
        let found = find_feasible_augmenting_walk(gp, &st.bundle.m_prime, start, walk_length_bound(gp))?;
        let Some(walk) = found else {
            st.queue.remove(0);
            trace.push(TraceEntry {
                exposed: label,
                walk: None,
                structure: None,
                case: Case::NoWalk,
                removed: Vec::new(),
            });
            continue;
        };
        let walk_json = walk.to_json(gp);
        let u = st.original_of_copy(walk.start());
        let v = st.original_of_copy(walk.end());
        let (u_cov, v_cov) = (st.covered(u), st.covered(v));
        let mut structure = None;
        let (case, to_remove): (Case, Vec<VertexId>) = if u_cov && v_cov {
            trace.push(entry(label, walk_json.clone(), None, Case::BothEndpointsCovered, vec![]));
            return Ok(infeasible(Infeasible::BothEndpointsCovered { walk: walk_json }, trace));
        } else if u_cov {
            (Case::OneEndpointExposed, vec![v])
        } else if v_cov {
            (Case::OneEndpointExposed, vec![u])
        } else if u == v {
            (Case::SameOriginalVertex, vec![u])
        } else {
            let s = decompose_to_basic_structure(gp, &st.bundle.m_prime, &walk)?;
            structure = Some(s.kind());
            match &s {
                BasicStructure::Cycle(_) | BasicStructure::BiCycle { .. } => {
                    let witness = s.as_walk().to_json(gp);
                    let (case, reason) = if s.kind() == StructureKind::Cycle {
                        (Case::AugmentingCycle, Infeasible::AugmentingCycle { walk: witness })
                    } else {
                        (Case::AugmentingBiCycle, Infeasible::AugmentingBiCycle { walk: witness })
                    };
                    trace.push(entry(label, walk_json, structure, case, vec![]));
                    return Ok(infeasible(reason, trace));
                }
                BasicStructure::Flower { stem, .. } => {
                    let root = stem.start();
                    if root == walk.start() {
                        (Case::FlowerAtStart, vec![u])
                    } else if root == walk.end() {
                        (Case::FlowerAtEnd, vec![v])
                    } else {
                        return Err(WalkError::Malformed("flower rooted away from the walk ends".into()).into());
                    }
                }
                BasicStructure::ProperPath(path) => {
                    if m_max {
                        let (first, second) = traceback_flags(&st, path)?;
                        if !first && !second {
                            return Err(StabilizerError::NoAugmentingTraceback(path.label(gp)));
                        }
                        let mut out = Vec::new();
                        if first {
                            out.push(u);
                        }
                        if second {
                            out.push(v);
                        }
                        (Case::Traceback { first, second }, out)
                    } else {
                        (Case::RemoveBoth, vec![u, v])
                    }
                }
            }
        };
        for &x in &to_remove {
            st.remove(x)?;
        }
        trace.push(entry(label, walk_json, structure, case, names(&to_remove)));
    }

    let m = st.instance.matching_or_empty();
    let w_m = m.weight(&st.instance.graph);
    let nu_f = fractional_value(&st.instance.graph)?;
    let check = FinalCheck {
        matching_weight: Frac(w_m),
        fractional_value: Frac(nu_f),
        stable: w_m == nu_f,
    };
    if w_m < nu_f {
        return Ok(StabilizerResult {
            outcome: Outcome::Infeasible(Infeasible::FractionalGap {
                matching_weight: Frac(w_m),
                fractional_value: Frac(nu_f),
            }),
            trace,
            certificate: Some(check),
        });
    }
    let mut removed = st.removed.clone();
    removed.sort();
    Ok(StabilizerResult {
        outcome: Outcome::Stabilized {
            removed: names(&removed),
        },
        trace,
        certificate: Some(check),
    })
}

fn entry(exposed: String, walk: WalkJson, structure: Option<StructureKind>, case: Case, removed: Vec<String>) -> TraceEntry {
    TraceEntry {
        exposed,
        walk: Some(walk),
        structure,
        case,
        removed,
    }
}

fn infeasible(reason: Infeasible, trace: Vec<TraceEntry>) -> StabilizerResult {
    StabilizerResult {
        outcome: Outcome::Infeasible(reason),
        trace,
        certificate: None,
    }
}

/// Which of `tb(eta(P), eta(u))` and `tb(eta(P), eta(v))` is augmenting.
fn traceback_flags(st: &State, path: &Walk) -> Result<(bool, bool), StabilizerError> {
    let graph = &st.instance.graph;
    let m = st.instance.matching_or_empty();
    let image = st.bundle.eta_walk(graph, path)?;
    let augmenting = |end| -> Result<bool, StabilizerError> {
        let tb = traceback(&image, end)?;
        Ok(is_alternating(&tb, &m) && gain(graph, &tb, &m) > Rational::from_integer(0))
    };
    Ok((augmenting(Endpoint::First)?, augmenting(Endpoint::Last)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::CapacitatedGraph;

    fn with_pairs(inst: Instance, pairs: &[(&str, &str)]) -> Instance {
        let g = inst.graph;
        let m = CMatching::new(&g, pairs.iter().map(|(a, b)| g.edge_by_names(a, b).unwrap())).unwrap();
        Instance::with_matching(g, m)
    }

    #[test]
    fn fig1_removes_t_only() {
        let res = m_vertex_stabilizer(&fixtures::fig1(), StabilizerOptions::default()).unwrap();
        assert_eq!(res.removed().unwrap(), ["t"]);
        assert!(res.certificate.unwrap().stable);
        let oracle = m_vertex_stabilizer_bruteforce(&fixtures::fig1()).unwrap().unwrap();
        assert_eq!(oracle.len(), 1);
    }

    #[test]
    fn stable_instance_needs_nothing() {
        let inst = with_pairs(fixtures::single_edge(), &[("u", "v")]);
        let res = m_vertex_stabilizer(&inst, StabilizerOptions::default()).unwrap();
        assert_eq!(res.removed().unwrap().len(), 0);
    }

    #[test]
    fn triangle_removes_the_exposed_vertex() {
        let inst = with_pairs(fixtures::triangle(), &[("0", "1")]);
        let res = m_vertex_stabilizer(&inst, StabilizerOptions::default()).unwrap();
        assert_eq!(res.removed().unwrap(), ["2"]);
    }

    #[test]
    fn rejects_non_maximum_matching() {
        let inst = fixtures::single_edge();
        assert!(matches!(
            m_vertex_stabilizer(&inst, StabilizerOptions::default()),
            Err(StabilizerError::NotMaximum)
        ));
    }

    #[test]
    fn relaxed_removes_both_ends_of_an_unmatched_edge() {
        let inst = fixtures::single_edge();
        let res = m_vertex_stabilizer_relaxed(&inst).unwrap();
        assert_eq!(res.removed().unwrap().len(), 2);
        assert_eq!(m_vertex_stabilizer_bruteforce(&inst).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn relaxed_agrees_with_exact_on_maximum_matching() {
        let a = m_vertex_stabilizer(&fixtures::fig1(), StabilizerOptions::default()).unwrap();
        let b = m_vertex_stabilizer_relaxed(&fixtures::fig1()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn covered_odd_cycle_is_infeasible() {
        // triangle with capacities 2 fully matched, plus a pendant exposed vertex
        let g = CapacitatedGraph::validate(
            &[("a", 2), ("b", 2), ("c", 2), ("p", 1)],
            &[
                ("a", "b", Rational::from_integer(1)),
                ("b", "c", Rational::from_integer(1)),
                ("c", "a", Rational::from_integer(1)),
            ],
        )
        .unwrap();
        // matching {ab, bc}: a and c have one unit of slack each
        let inst = with_pairs(Instance::new(g), &[("a", "b"), ("b", "c")]);
        let res = m_vertex_stabilizer_relaxed(&inst).unwrap();
        let oracle = m_vertex_stabilizer_bruteforce(&inst).unwrap();
        assert_eq!(res.is_stabilized(), oracle.is_some());
    }
}
