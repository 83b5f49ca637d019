//! Problem instances, their exact brute-force oracles, independent witness
//! checkers, and the primal/dual/incidence graphs of constraint sets.

pub mod check;
mod io;
pub mod oracles;
mod structure;

pub use io::{BooleanRelationJson, ConstraintJson, Instance, InstanceJson};
pub use oracles::*;
pub use structure::{build_dual, build_incidence, build_primal};

use thiserror::Error;

use crate::graph::{EdgeWeighting, Graph, GraphError, Vertex};

pub type Color = u32;

/// Total-weight ceiling standing in for the unary-size promise on weights.
pub const DEFAULT_WEIGHT_CEILING: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("total weight {total} exceeds the ceiling {ceiling}")]
    WeightCeiling { total: u64, ceiling: u64 },
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ProblemError> {
    Err(ProblemError::Invalid(msg.into()))
}

fn check_len(what: &str, got: usize, expected: usize) -> Result<(), ProblemError> {
    if got == expected {
        Ok(())
    } else {
        invalid(format!("{what} has {got} entries for {expected} vertices"))
    }
}

/// LIST COLORING: color each vertex from its own list, properly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListColoringInstance {
    graph: Graph,
    lists: Vec<Vec<Color>>,
}

impl ListColoringInstance {
    /// Lists are sorted and deduplicated; colors must be positive.
    pub fn new(graph: Graph, lists: Vec<Vec<Color>>) -> Result<Self, ProblemError> {
        check_len("lists", lists.len(), graph.vertex_count())?;
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            if l.contains(&0) {
                return invalid(format!("list of vertex {v} contains color 0"));
            }
            l.sort_unstable();
            l.dedup();
        }
        Ok(ListColoringInstance { graph, lists })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }
}

/// PRECOLORING EXTENSION: extend a partial proper coloring to a proper
/// coloring with colors `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecoloringExtensionInstance {
    graph: Graph,
    precolor: Vec<Option<Color>>,
    r: Color,
}

impl PrecoloringExtensionInstance {
    pub fn new(graph: Graph, precolor: Vec<Option<Color>>, r: Color) -> Result<Self, ProblemError> {
        check_len("precolor", precolor.len(), graph.vertex_count())?;
        if r == 0 {
            return invalid("r must be positive");
        }
        for (v, c) in precolor.iter().enumerate() {
            if let Some(c) = *c {
                if c == 0 || c > r {
                    return invalid(format!("precolor {c} of vertex {v} is outside 1..={r}"));
                }
            }
        }
        for &(u, v) in graph.edges() {
            if precolor[u].is_some() && precolor[u] == precolor[v] {
                return invalid(format!("precoloring is improper on edge {{{u}, {v}}}"));
            }
        }
        Ok(PrecoloringExtensionInstance { graph, precolor, r })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn precolor(&self) -> &[Option<Color>] {
        &self.precolor
    }

    pub fn r(&self) -> Color {
        self.r
    }

    /// The same question phrased as list coloring.
    pub fn as_list_coloring(&self) -> ListColoringInstance {
        let lists = self
            .precolor
            .iter()
            .map(|c| match c {
                Some(c) => vec![*c],
                None => (1..=self.r).collect(),
            })
            .collect();
        ListColoringInstance::new(self.graph.clone(), lists).expect("colors are positive")
    }
}

/// EQUITABLE COLORING with `r` colors: a proper coloring whose `r` class
/// sizes (empty classes included) pairwise differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableColoringInstance {
    graph: Graph,
    r: Color,
}

impl EquitableColoringInstance {
    pub fn new(graph: Graph, r: Color) -> Result<Self, ProblemError> {
        if r == 0 {
            return invalid("r must be at least 1");
        }
        Ok(EquitableColoringInstance { graph, r })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn r(&self) -> Color {
        self.r
    }
}

/// GENERAL FACTOR: an edge subset whose degree at every `v` lies in `K(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFactorInstance {
    graph: Graph,
    cardinality_sets: Vec<Vec<usize>>,
}

impl GeneralFactorInstance {
    pub fn new(graph: Graph, cardinality_sets: Vec<Vec<usize>>) -> Result<Self, ProblemError> {
        check_len("cardinality_sets", cardinality_sets.len(), graph.vertex_count())?;
        let mut sets = cardinality_sets;
        for (v, k) in sets.iter_mut().enumerate() {
            k.sort_unstable();
            k.dedup();
            if k.last().is_some_and(|&m| m > graph.degree(v)) {
                return invalid(format!(
                    "K({v}) contains values above the degree {}",
                    graph.degree(v)
                ));
            }
        }
        Ok(GeneralFactorInstance {
            graph,
            cardinality_sets: sets,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cardinality_set(&self, v: Vertex) -> &[usize] {
        &self.cardinality_sets[v]
    }

    pub fn cardinality_sets(&self) -> &[Vec<usize>] {
        &self.cardinality_sets
    }
}

/// A Boolean relation `R ⊆ {0,1}^arity`, tuples kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanRelation {
    arity: usize,
    tuples: Vec<Vec<bool>>,
}

impl BooleanRelation {
    pub fn new(arity: usize, tuples: Vec<Vec<bool>>) -> Result<Self, ProblemError> {
        if arity == 0 {
            return invalid("relation arity must be positive");
        }
        if let Some(t) = tuples.iter().find(|t| t.len() != arity) {
            return invalid(format!("tuple of length {} in a relation of arity {arity}", t.len()));
        }
        let mut tuples = tuples;
        tuples.sort_unstable();
        let before = tuples.len();
        tuples.dedup();
        if tuples.len() != before {
            return invalid("relation lists a tuple twice");
        }
        Ok(BooleanRelation { arity, tuples })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<bool>] {
        &self.tuples
    }

    pub fn contains(&self, t: &[bool]) -> bool {
        self.tuples.binary_search_by(|x| x.as_slice().cmp(t)).is_ok()
    }
}

/// A constraint: distinct scope variables and the index of its relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub scope: Vec<usize>,
    pub relation: usize,
}

/// GENERALIZED SATISFIABILITY over variables `0..variable_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GensatInstance {
    variable_count: usize,
    relations: Vec<BooleanRelation>,
    constraints: Vec<Constraint>,
}

impl GensatInstance {
    pub fn new(
        variable_count: usize,
        relations: Vec<BooleanRelation>,
        constraints: Vec<Constraint>,
    ) -> Result<Self, ProblemError> {
        for (i, c) in constraints.iter().enumerate() {
            let Some(rel) = relations.get(c.relation) else {
                return invalid(format!("constraint {i} names missing relation {}", c.relation));
            };
            if rel.arity() != c.scope.len() {
                return invalid(format!(
                    "constraint {i} has scope length {} but relation arity {}",
                    c.scope.len(),
                    rel.arity()
                ));
            }
            let mut sorted = c.scope.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != c.scope.len() {
                return invalid(format!("constraint {i} repeats a variable"));
            }
            if sorted.last().is_some_and(|&x| x >= variable_count) {
                return invalid(format!("constraint {i} uses an unknown variable"));
            }
        }
        Ok(GensatInstance {
            variable_count,
            relations,
            constraints,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn relations(&self) -> &[BooleanRelation] {
        &self.relations
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn relation_of(&self, c: &Constraint) -> &BooleanRelation {
        &self.relations[c.relation]
    }
}

/// CHOSEN MAXIMUM OUTDEGREE: orient so that each `v` emits at most `rho(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChosenOutdegreeInstance {
    graph: Graph,
    weights: EdgeWeighting,
    rho: Vec<u64>,
}

impl ChosenOutdegreeInstance {
    pub fn new(graph: Graph, weights: EdgeWeighting, rho: Vec<u64>) -> Result<Self, ProblemError> {
        check_len("rho", rho.len(), graph.vertex_count())?;
        if weights.len() != graph.edge_count() {
            return Err(GraphError::WeightCount {
                expected: graph.edge_count(),
                got: weights.len(),
            }
            .into());
        }
        Ok(ChosenOutdegreeInstance { graph, weights, rho })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &EdgeWeighting {
        &self.weights
    }

    pub fn rho(&self) -> &[u64] {
        &self.rho
    }
}

/// MINIMUM MAXIMUM OUTDEGREE decision: orient so that every weighted
/// outdegree is at most `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxOutdegreeInstance {
    graph: Graph,
    weights: EdgeWeighting,
    r: u64,
}

impl MinMaxOutdegreeInstance {
    pub fn new(graph: Graph, weights: EdgeWeighting, r: u64) -> Result<Self, ProblemError> {
        Self::with_ceiling(graph, weights, r, DEFAULT_WEIGHT_CEILING)
    }

    pub fn with_ceiling(graph: Graph, weights: EdgeWeighting, r: u64, ceiling: u64) -> Result<Self, ProblemError> {
        if r == 0 {
            return invalid("r must be positive");
        }
        if weights.len() != graph.edge_count() {
            return Err(GraphError::WeightCount {
                expected: graph.edge_count(),
                got: weights.len(),
            }
            .into());
        }
        if weights.total_weight() > ceiling {
            return Err(ProblemError::WeightCeiling {
                total: weights.total_weight(),
                ceiling,
            });
        }
        Ok(MinMaxOutdegreeInstance { graph, weights, r })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &EdgeWeighting {
        &self.weights
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// The same question with `rho ≡ r`.
    pub fn as_chosen(&self) -> ChosenOutdegreeInstance {
        ChosenOutdegreeInstance {
            graph: self.graph.clone(),
            weights: self.weights.clone(),
            rho: vec![self.r; self.graph.vertex_count()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_invariants() {
        let k2 = Graph::complete(2);
        assert!(ListColoringInstance::new(k2.clone(), vec![vec![1]]).is_err());
        assert!(ListColoringInstance::new(k2.clone(), vec![vec![0], vec![1]]).is_err());
        assert!(PrecoloringExtensionInstance::new(k2.clone(), vec![Some(1), Some(1)], 2).is_err());
        assert!(PrecoloringExtensionInstance::new(k2.clone(), vec![Some(3), None], 2).is_err());
        assert!(EquitableColoringInstance::new(k2.clone(), 0).is_err());
        assert!(GeneralFactorInstance::new(k2.clone(), vec![vec![2], vec![0]]).is_err());
        assert!(BooleanRelation::new(2, vec![vec![true]]).is_err());
        assert!(BooleanRelation::new(1, vec![vec![true], vec![true]]).is_err());
        let rel = BooleanRelation::new(2, vec![vec![true, false]]).unwrap();
        let bad_scope = Constraint { scope: vec![0, 0], relation: 0 };
        assert!(GensatInstance::new(2, vec![rel.clone()], vec![bad_scope]).is_err());
        let out_of_range = Constraint { scope: vec![0, 2], relation: 0 };
        assert!(GensatInstance::new(2, vec![rel], vec![out_of_range]).is_err());

        let w = EdgeWeighting::new(&k2, vec![600_000]).unwrap();
        assert!(MinMaxOutdegreeInstance::new(k2.clone(), w.clone(), 1).is_ok());
        let heavy = Graph::complete(3);
        let hw = EdgeWeighting::uniform(&heavy, 400_000).unwrap();
        assert_eq!(
            MinMaxOutdegreeInstance::new(heavy, hw, 1),
            Err(ProblemError::WeightCeiling { total: 1_200_000, ceiling: DEFAULT_WEIGHT_CEILING })
        );
        assert!(MinMaxOutdegreeInstance::new(k2, w, 0).is_err());
    }
}
