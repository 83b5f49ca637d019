//! Tree decompositions: validation, width, construction from elimination
//! orders (heuristic and exact), vertex-set augmentation, forests, and the
//! nice normal form used by the dynamic programs in [`crate::solvers`].

mod elimination;
mod exact;
mod nice;

pub use elimination::{from_elimination_order, heuristic_decomposition, Heuristic, HEURISTIC_RESTARTS};
pub use exact::{exact_treewidth, DEFAULT_EXACT_LIMIT, HARD_EXACT_LIMIT};
pub use nice::{to_nice, NiceKind, NiceNode, NiceTreeDecomposition};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdError {
    #[error("decomposition tree is not a tree ({nodes} nodes, {edges} edges)")]
    NotATree { nodes: usize, edges: usize },
    #[error("invalid tree decomposition: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("{bags} bags for {nodes} tree nodes")]
    BagCount { nodes: usize, bags: usize },
    #[error("not an elimination order: {0}")]
    BadOrder(String),
    #[error("graph has {n} vertices, above the exact-search limit {limit}; use min-fill or min-degree")]
    TooLarge { n: usize, limit: usize },
    #[error("graph is not a forest: edge {{{0}, {1}}} closes a cycle")]
    NotAForest(Vertex, Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A violated decomposition condition, naming the responsible vertex, edge
/// or bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { node: usize, vertex: Vertex },
    VertexUncovered { vertex: Vertex },
    EdgeUncovered { u: Vertex, v: Vertex },
    /// The bags holding `vertex` are not connected; `first` and `second` are
    /// two such nodes in different pieces.
    Disconnected { vertex: Vertex, first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds vertex {vertex} outside the graph")
            }
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Violation::Disconnected { vertex, first, second } => write!(
                f,
                "bags containing vertex {vertex} are disconnected (nodes {first} and {second})"
            ),
        }
    }
}

/// A tree `T` with a bag of graph vertices at every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    tree: Graph,
    bags: Vec<Vec<Vertex>>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated. The tree shape is not checked here;
    /// [`TreeDecomposition::validate`] reports a non-tree as a structural error.
    pub fn new(tree: Graph, bags: Vec<Vec<Vertex>>) -> Result<Self, TdError> {
        if bags.len() != tree.vertex_count() {
            return Err(TdError::BagCount {
                nodes: tree.vertex_count(),
                bags: bags.len(),
            });
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn single_bag(bag: Vec<Vertex>) -> Self {
        Self::new(Graph::empty(1), vec![bag]).expect("one node, one bag")
    }

    /// Builds a decomposition from bags and tree edges between bag indices.
    pub fn from_edges(bags: Vec<Vec<Vertex>>, tree_edges: &[(usize, usize)]) -> Result<Self, TdError> {
        let tree = Graph::new(bags.len(), tree_edges.iter().copied())?;
        Self::new(tree, bags)
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[Vertex] {
        &self.bags[node]
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one; `-1` when every bag is empty.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Checks coverage of vertices and edges and connectivity of each
    /// vertex's bags. A tree that is not a tree is reported before any of
    /// those conditions.
    pub fn validate(&self, g: &Graph) -> Result<(), TdError> {
        if !self.tree.is_tree() {
            return Err(TdError::NotATree {
                nodes: self.tree.vertex_count(),
                edges: self.tree.edge_count(),
            });
        }
        let mut violations = Vec::new();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.vertex_count() {
                    violations.push(Violation::VertexOutOfRange { node, vertex: v });
                } else {
                    holders[v].push(node);
                }
            }
        }
        for v in g.vertices() {
            if holders[v].is_empty() {
                violations.push(Violation::VertexUncovered { vertex: v });
            }
        }
        for &(u, v) in g.edges() {
            let covered = holders[u]
                .iter()
                .any(|&t| self.bags[t].binary_search(&v).is_ok());
            if !covered {
                violations.push(Violation::EdgeUncovered { u, v });
            }
        }
        for v in g.vertices() {
            if let Some((first, second)) = self.split_of(v, &holders[v]) {
                violations.push(Violation::Disconnected { vertex: v, first, second });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(TdError::Invalid(violations))
        }
    }

    /// Two nodes holding `v` that are not joined through nodes holding `v`.
    fn split_of(&self, v: Vertex, nodes: &[usize]) -> Option<(usize, usize)> {
        let &start = nodes.first()?;
        let mut seen = HashMap::from([(start, ())]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &s in self.tree.neighbors(t) {
                if !seen.contains_key(&s) && self.bags[s].binary_search(&v).is_ok() {
                    seen.insert(s, ());
                    stack.push(s);
                }
            }
        }
        nodes
            .iter()
            .find(|t| !seen.contains_key(t))
            .map(|&t| (start, t))
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    /// Appends a new node with `bag`, attached to `parent`.
    pub fn attach(&self, parent: usize, bag: Vec<Vertex>) -> Self {
        self.attach_all(std::iter::once((parent, bag)))
    }

    /// Appends several new nodes, each attached to an existing node.
    pub fn attach_all<I>(&self, extra: I) -> Self
    where
        I: IntoIterator<Item = (usize, Vec<Vertex>)>,
    {
        let mut bags = self.bags.clone();
        let mut edges = self.tree.edges().to_vec();
        for (parent, bag) in extra {
            edges.push((parent, bags.len()));
            bags.push(bag);
        }
        Self::from_edges(bags, &edges).expect("attaching leaves keeps the tree simple")
    }

    /// First node whose bag contains `v`.
    pub fn node_containing(&self, v: Vertex) -> Option<usize> {
        self.bags.iter().position(|b| b.binary_search(&v).is_ok())
    }
}

/// Lifts a decomposition of `G - X` to one of `G` by adding `X` to every bag.
/// `td` is indexed by the vertices of `G - X` as numbered by
/// [`Graph::remove_vertices`].
pub fn augment_with_set(td: &TreeDecomposition, g: &Graph, x: &[Vertex]) -> Result<TreeDecomposition, TdError> {
    let (rest, map) = g.remove_vertices(x)?;
    td.validate(&rest)?;
    let mut back = vec![0; rest.vertex_count()];
    for (&old, &new) in &map {
        back[new] = old;
    }
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let bags = td
        .bags()
        .iter()
        .map(|b| b.iter().map(|&v| back[v]).chain(xs.iter().copied()).collect())
        .collect();
    TreeDecomposition::new(td.tree().clone(), bags)
}

/// Width-1 decomposition of a forest: one bag per edge, an edge bag linked to
/// the bag of its parent edge, isolated vertices in singleton bags, and
/// components chained through their first bags.
pub fn decompose_forest(g: &Graph) -> Result<TreeDecomposition, TdError> {
    if let Some((u, v)) = cycle_edge(g) {
        return Err(TdError::NotAForest(u, v));
    }
    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut tree_edges = Vec::new();
    let mut previous_component: Option<usize> = None;
    for comp in g.components() {
        let root = comp[0];
        let first = bags.len();
        if g.degree(root) == 0 {
            bags.push(vec![root]);
        } else {
            // bag_of[v] = node of the edge between v and its parent
            let mut bag_of: HashMap<Vertex, usize> = HashMap::new();
            let mut stack = vec![(root, usize::MAX)];
            while let Some((v, parent)) = stack.pop() {
                for &u in g.neighbors(v) {
                    if u == parent {
                        continue;
                    }
                    let node = bags.len();
                    bags.push(vec![v, u]);
                    match bag_of.get(&v) {
                        Some(&up) => tree_edges.push((up, node)),
                        None if node != first => tree_edges.push((first, node)),
                        None => {}
                    }
                    bag_of.insert(u, node);
                    stack.push((u, v));
                }
            }
        }
        if let Some(prev) = previous_component {
            tree_edges.push((prev, first));
        }
        previous_component = Some(first);
    }
    if bags.is_empty() {
        bags.push(Vec::new());
    }
    TreeDecomposition::from_edges(bags, &tree_edges)
}

fn cycle_edge(g: &Graph) -> Option<(Vertex, Vertex)> {
    let mut parent: Vec<usize> = g.vertices().collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Some((u, v));
        }
        parent[a] = b;
    }
    None
}

/// `{"nodes": int, "tree_edges": [[a, b], ..], "bags": [[v, ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub nodes: usize,
    pub tree_edges: Vec<[usize; 2]>,
    pub bags: Vec<Vec<Vertex>>,
}

impl From<&TreeDecomposition> for DecompositionJson {
    fn from(td: &TreeDecomposition) -> Self {
        DecompositionJson {
            nodes: td.node_count(),
            tree_edges: td.tree.edges().iter().map(|&(a, b)| [a, b]).collect(),
            bags: td.bags.clone(),
        }
    }
}

impl TryFrom<DecompositionJson> for TreeDecomposition {
    type Error = TdError;

    fn try_from(j: DecompositionJson) -> Result<Self, TdError> {
        let tree = Graph::new(j.nodes, j.tree_edges.iter().map(|e| (e[0], e[1])))?;
        TreeDecomposition::new(tree, j.bags)
    }
}

impl Serialize for TreeDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DecompositionJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TreeDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        TreeDecomposition::try_from(DecompositionJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let k3 = Graph::complete(3);
        let td = TreeDecomposition::single_bag(vec![0, 1, 2]);
        assert_eq!(td.validate(&k3), Ok(()));
        assert_eq!(td.width(), 2);

        let p3 = Graph::path(3);
        let td = TreeDecomposition::from_edges(vec![vec![0, 1], vec![1, 2]], &[(0, 1)]).unwrap();
        assert_eq!(td.validate(&p3), Ok(()));
        assert_eq!(td.width(), 1);

        let bad = TreeDecomposition::from_edges(vec![vec![0, 1], vec![2]], &[(0, 1)]).unwrap();
        assert_eq!(
            bad.validate(&p3),
            Err(TdError::Invalid(vec![Violation::EdgeUncovered { u: 1, v: 2 }]))
        );
    }

    #[test]
    fn validate_reports_structure_and_connectivity() {
        let p3 = Graph::path(3);
        let not_tree = TreeDecomposition::from_edges(vec![vec![0, 1], vec![1, 2]], &[]).unwrap();
        assert!(matches!(not_tree.validate(&p3), Err(TdError::NotATree { .. })));

        let split = TreeDecomposition::from_edges(
            vec![vec![0, 1], vec![2], vec![1, 2]],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(
            split.validate(&p3),
            Err(TdError::Invalid(vec![Violation::Disconnected { vertex: 1, first: 0, second: 2 }]))
        );

        let missing = TreeDecomposition::single_bag(vec![0, 1, 5]);
        let err = missing.validate(&p3).unwrap_err();
        let TdError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&Violation::VertexOutOfRange { node: 0, vertex: 5 }));
        assert!(v.contains(&Violation::VertexUncovered { vertex: 2 }));
    }

    #[test]
    fn width_examples() {
        assert_eq!(TreeDecomposition::single_bag(vec![]).width(), -1);
        let td = TreeDecomposition::from_edges(vec![vec![0, 1], vec![1, 2]], &[(0, 1)]).unwrap();
        assert_eq!(td.width(), 1);
        assert_eq!(TreeDecomposition::single_bag((0..8).collect()).width(), 7);
    }

    #[test]
    fn augment_examples() {
        let p = Graph::path(4);
        let td = decompose_forest(&p).unwrap();
        assert_eq!(augment_with_set(&td, &p, &[]).unwrap(), td);

        let k3 = Graph::complete(3);
        let edge = TreeDecomposition::single_bag(vec![0, 1]);
        let lifted = augment_with_set(&edge, &k3, &[2]).unwrap();
        assert_eq!(lifted.validate(&k3), Ok(()));
        assert_eq!(lifted.width(), 2);

        // decomposition of the wrong graph is rejected
        assert!(augment_with_set(&TreeDecomposition::single_bag(vec![0]), &k3, &[2]).is_err());
    }

    #[test]
    fn forest_examples() {
        let e = Graph::empty(4);
        let td = decompose_forest(&e).unwrap();
        assert_eq!(td.validate(&e), Ok(()));
        assert_eq!(td.width(), 0);

        let k2 = Graph::complete(2);
        assert_eq!(decompose_forest(&k2).unwrap().width(), 1);

        let two_paths = Graph::new(8, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]).unwrap();
        let td = decompose_forest(&two_paths).unwrap();
        assert_eq!(td.validate(&two_paths), Ok(()));
        assert_eq!(td.width(), 1);

        assert_eq!(decompose_forest(&Graph::cycle(3)), Err(TdError::NotAForest(1, 2)));
        assert_eq!(decompose_forest(&Graph::empty(0)).unwrap().width(), -1);
    }

    #[test]
    fn forest_with_branching() {
        let g = Graph::new(9, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (6, 7)]).unwrap();
        let td = decompose_forest(&g).unwrap();
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn json_round_trip() {
        let td = TreeDecomposition::from_edges(vec![vec![0, 1], vec![1, 2]], &[(0, 1)]).unwrap();
        let text = serde_json::to_string(&td).unwrap();
        assert_eq!(text, r#"{"nodes":2,"tree_edges":[[0,1]],"bags":[[0,1],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<TreeDecomposition>(&text).unwrap(), td);
    }
}
