//! Instance builders: worked-example fixtures, the independent-dominating-set
//! hardness reduction, and seeded random instances.

pub mod fixtures;
mod mids;
mod random;

use thiserror::Error;

use crate::solvers::SolverError;

pub use mids::{
    all_minimum_ids, build_mids_reduction, greedy_ids, is_independent_dominating, mids_bruteforce, Gadget,
    MidsInstance, ReducedInstance, VertexOrigin, MIDS_BRUTEFORCE_MAX_VERTICES,
};
pub use random::{gen_random, random_c_matching, with_random_maximum_matching, RandomParams};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("source graph too large for exhaustive search: {got} > {limit} vertices")]
    TooLarge { limit: usize, got: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}
