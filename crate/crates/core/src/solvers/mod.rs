//! Polynomial-time solvers: dynamic programming over nice tree
//! decompositions for list coloring and chosen maximum outdegree, and the
//! network-flow algorithm for uniformly weighted minimum maximum outdegree.

mod dp;
mod flow;

pub use dp::{
    dp_chosen_outdegree, dp_chosen_outdegree_with_stats, dp_list_coloring, dp_list_coloring_with_stats, min_max_outdegree,
    DpStats,
};
pub use flow::{flow_min_max_uniform, flow_min_max_unit, flow_orientation, MaxFlow};

use thiserror::Error;

use crate::treewidth::TdError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("decomposition does not fit the instance: {0}")]
    BadDecomposition(String),
    #[error(transparent)]
    Td(#[from] TdError),
    #[error("weights are not uniform")]
    NonUniform,
}
