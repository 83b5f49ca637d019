//! Gadget constructions. Each reduction returns the target instance, a
//! tree decomposition built from the construction itself, the width bound
//! that decomposition certifies, and a map from target vertices to the role
//! they play in the gadget.
//!
//! Role indices (`i`, `j`, `q`, ...) are 1-based, matching the way parts and
//! positions inside parts are numbered in the weight formulas; graph vertex
//! ids stay 0-based.

mod clique_gensat;
mod coloring;
mod minmax;
mod outdegree;

pub use clique_gensat::clique_to_gensat;
pub use coloring::{lc_to_precoloring, pc_to_list_coloring};
pub use minmax::chosen_to_minmax;
pub use outdegree::{
    clique_orientation, extract_clique, outdegree_report, pc_to_chosen_outdegree, GadgetLayout, GadgetParameters,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::problems::{
    build_incidence, ChosenOutdegreeInstance, GensatInstance, Instance, ListColoringInstance,
    MinMaxOutdegreeInstance, PrecoloringExtensionInstance, ProblemError,
};
use crate::treewidth::{TdError, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid reduction input: {0}")]
    Input(String),
    #[error("gadget arithmetic check failed: {0}")]
    Arithmetic(String),
    #[error("orientation is not rho-admissible for this gadget")]
    NotAdmissible,
    #[error("reduction output has no gadget layout (canonical instance)")]
    NoLayout,
    #[error("extracted set {0:?} is not a clique")]
    NotAClique(Vec<Vertex>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Td(#[from] TdError),
}

/// The role a target vertex plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Role {
    A { i: usize },
    U { i: usize, j: usize },
    X { i: usize, j: usize },
    Y { i: usize, j: usize },
    B { i: usize, ip: usize },
    C { i: usize, ip: usize },
    D { i: usize, ip: usize },
    E { i: usize, ip: usize, q: usize, qp: usize },
    /// Part representative of the list-coloring gadget.
    Selector { i: usize },
    /// Vertex standing for the non-adjacent source pair `(u, v)`.
    Pad { u: Vertex, v: Vertex },
    /// Source vertex carried over unchanged.
    Original { v: Vertex },
    /// Degree-one neighbor of `v` precolored `color`.
    Pendant { v: Vertex, color: u32 },
    TriangleX { v: Vertex },
    TriangleY { v: Vertex },
    Variable { i: usize, l: usize },
    Constraint { i: usize, j: usize },
    /// Vertex of a canonical replacement instance.
    Canonical { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    #[serde(flatten)]
    pub role: Role,
    pub vertex: Vertex,
}

/// Bijection between target vertices and roles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GadgetIndex {
    roles: Vec<(Vertex, Role)>,
    by_role: HashMap<Role, Vertex>,
}

impl GadgetIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics on a repeated role or vertex; constructions never produce one.
    pub fn insert(&mut self, vertex: Vertex, role: Role) {
        assert!(self.by_role.insert(role, vertex).is_none(), "role {role:?} assigned twice");
        self.roles.push((vertex, role));
    }

    pub fn vertex(&self, role: Role) -> Option<Vertex> {
        self.by_role.get(&role).copied()
    }

    pub fn role(&self, vertex: Vertex) -> Option<Role> {
        self.roles.iter().find(|(v, _)| *v == vertex).map(|(_, r)| *r)
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn entries(&self) -> Vec<IndexEntry> {
        self.roles.iter().map(|&(vertex, role)| IndexEntry { role, vertex }).collect()
    }

    pub fn from_entries(entries: &[IndexEntry]) -> Self {
        let mut idx = Self::new();
        for e in entries {
            idx.insert(e.vertex, e.role);
        }
        idx
    }
}

/// Extra decomposition shipped alongside the main witness, for another
/// graph derived from the target (e.g. the dual graph of a constraint set).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxWitness {
    pub name: String,
    pub graph: Graph,
    pub witness: TreeDecomposition,
    pub claimed_width_bound: i64,
}

/// Target instance plus certificate data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput<I, D = ()> {
    pub instance: I,
    pub witness: TreeDecomposition,
    pub claimed_width_bound: i64,
    pub index: GadgetIndex,
    pub aux: Vec<AuxWitness>,
    pub note: Option<String>,
    pub detail: D,
}

/// The graph a target instance's witness decomposes.
pub trait WitnessGraph {
    fn witness_graph(&self) -> Graph;
}

macro_rules! plain_graph {
    ($($ty:ty),*) => {
        $(impl WitnessGraph for $ty {
            fn witness_graph(&self) -> Graph {
                self.graph().clone()
            }
        })*
    };
}

plain_graph!(
    ListColoringInstance,
    PrecoloringExtensionInstance,
    ChosenOutdegreeInstance,
    MinMaxOutdegreeInstance
);

impl WitnessGraph for GensatInstance {
    /// The incidence graph.
    fn witness_graph(&self) -> Graph {
        build_incidence(self)
    }
}

impl<I: WitnessGraph, D> ReductionOutput<I, D> {
    /// Validates every witness and checks its width against its claim.
    pub fn check_witnesses(&self) -> Result<(), String> {
        let g = self.instance.witness_graph();
        check_one("witness", &self.witness, &g, self.claimed_width_bound)?;
        for aux in &self.aux {
            check_one(&aux.name, &aux.witness, &aux.graph, aux.claimed_width_bound)?;
        }
        Ok(())
    }

    pub fn witness_width(&self) -> i64 {
        self.witness.width()
    }
}

fn check_one(name: &str, td: &TreeDecomposition, g: &Graph, bound: i64) -> Result<(), String> {
    td.validate(g).map_err(|e| format!("{name}: {e}"))?;
    if td.width() > bound {
        return Err(format!("{name}: width {} exceeds the claimed bound {bound}", td.width()));
    }
    Ok(())
}

/// `{"instance": .., "witness": .., "claimed_width_bound": .., "index": [..]}`
/// plus optional `aux` witnesses and a `note`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutputJson {
    pub instance: Instance,
    pub witness: TreeDecomposition,
    pub claimed_width_bound: i64,
    pub index: Vec<IndexEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aux: Vec<AuxWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<I: Clone + Into<Instance>, D> ReductionOutput<I, D> {
    pub fn to_json(&self) -> ReductionOutputJson {
        ReductionOutputJson {
            instance: self.instance.clone().into(),
            witness: self.witness.clone(),
            claimed_width_bound: self.claimed_width_bound,
            index: self.index.entries(),
            aux: self.aux.clone(),
            note: self.note.clone(),
        }
    }
}

pub(crate) fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_entries_serialize_with_tags() {
        let e = IndexEntry {
            role: Role::E { i: 1, ip: 2, q: 3, qp: 1 },
            vertex: 17,
        };
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"tag":"e","i":1,"ip":2,"q":3,"qp":1,"vertex":17}"#);
        assert_eq!(serde_json::from_str::<IndexEntry>(&text).unwrap(), e);
    }

    #[test]
    fn index_is_bidirectional() {
        let mut idx = GadgetIndex::new();
        idx.insert(0, Role::A { i: 1 });
        idx.insert(1, Role::U { i: 1, j: 1 });
        assert_eq!(idx.vertex(Role::U { i: 1, j: 1 }), Some(1));
        assert_eq!(idx.role(0), Some(Role::A { i: 1 }));
        assert_eq!(GadgetIndex::from_entries(&idx.entries()), idx);
    }
}
