//! Simple undirected graphs and the companion values layered on top of them:
//! positive edge weightings, balanced k-partitions and orientations.
//!
//! Vertices are dense indices `0..vertex_count`. Edges are stored canonically
//! as `(u, v)` with `u < v`, sorted, and every companion value (weights,
//! orientation) is a vector aligned with that edge order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("edge {{{0}, {1}}} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("weighting has {got} entries but the graph has {expected} edges")]
    WeightCount { expected: usize, got: usize },
    #[error("edge {{{0}, {1}}} has weight 0; weights must be positive")]
    ZeroWeight(Vertex, Vertex),
    #[error("orientation has {got} entries but the graph has {expected} edges")]
    OrientationCount { expected: usize, got: usize },
    #[error("arc ({0}, {1}) does not orient any edge")]
    BadArc(Vertex, Vertex),
    #[error("invalid partition: {0}")]
    Partition(String),
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
    edge_ids: HashMap<(Vertex, Vertex), usize>,
}

fn canonical(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    /// Edge endpoints may be given in either order.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut edge_ids = HashMap::with_capacity(list.len());
        for (id, &(u, v)) in list.iter().enumerate() {
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_ids.insert((u, v), id);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges: list,
            adjacency,
            edge_ids,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph::new(vertex_count, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("petersen is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count
    }

    /// Canonical edges, `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_ids.contains_key(&canonical(u, v))
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edge_ids.get(&canonical(u, v)).copied()
    }

    /// Ids of the edges incident with `v`, in neighbor order.
    pub fn incident_edges(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(move |&u| self.edge_ids[&canonical(u, v)])
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// `G[X]`, with the old-to-new index map. New indices follow the sorted
    /// order of `x`.
    pub fn induced_subgraph(
        &self,
        x: &[Vertex],
    ) -> Result<(Graph, HashMap<Vertex, Vertex>), GraphError> {
        let mut keep: Vec<Vertex> = x.to_vec();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        keep.sort_unstable();
        keep.dedup();
        let map: HashMap<Vertex, Vertex> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(u, v)| Some((*map.get(u)?, *map.get(v)?)));
        let sub = Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph");
        Ok((sub, map))
    }

    /// `G - X`, with the old-to-new index map of the surviving vertices.
    pub fn remove_vertices(
        &self,
        x: &[Vertex],
    ) -> Result<(Graph, HashMap<Vertex, Vertex>), GraphError> {
        let mut drop = vec![false; self.vertex_count];
        for &v in x {
            self.check_vertex(v)?;
            drop[v] = true;
        }
        let rest: Vec<Vertex> = self.vertices().filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&rest)
    }

    pub fn is_clique(&self, s: &[Vertex]) -> Result<bool, GraphError> {
        for &v in s {
            self.check_vertex(v)?;
        }
        Ok(s.iter().enumerate().all(|(i, &u)| {
            s[i + 1..].iter().all(|&v| u == v || self.has_edge(u, v))
        }))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count >= 1 && self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }
}

/// Positive integral weights aligned with a graph's canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    weights: Vec<u64>,
    total: u64,
}

impl EdgeWeighting {
    pub fn new(g: &Graph, weights: Vec<u64>) -> Result<Self, GraphError> {
        if weights.len() != g.edge_count() {
            return Err(GraphError::WeightCount {
                expected: g.edge_count(),
                got: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            let (u, v) = g.edges()[i];
            return Err(GraphError::ZeroWeight(u, v));
        }
        let total = weights.iter().sum();
        Ok(EdgeWeighting { weights, total })
    }

    pub fn uniform(g: &Graph, w: u64) -> Result<Self, GraphError> {
        Self::new(g, vec![w; g.edge_count()])
    }

    /// Builds a weighting from `(u, v, w)` triples covering every edge once.
    pub fn from_triples<I>(g: &Graph, triples: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u64)>,
    {
        let mut weights = vec![0; g.edge_count()];
        let mut set = vec![false; g.edge_count()];
        for (u, v, w) in triples {
            let id = g.edge_id(u, v).ok_or(GraphError::MissingEdge(u, v))?;
            if set[id] {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            set[id] = true;
            weights[id] = w;
        }
        Self::new(g, weights)
    }

    pub fn weight(&self, edge_id: usize) -> u64 {
        self.weights[edge_id]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_uniform(&self) -> Option<u64> {
        match self.weights.first() {
            None => None,
            Some(&w) => self.weights.iter().all(|&x| x == w).then_some(w),
        }
    }
}

/// A graph whose vertex set is split into `k` equal-size parts with no edge
/// inside a part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    graph: Graph,
    parts: Vec<Vec<Vertex>>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, parts: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let mut owner = vec![usize::MAX; graph.vertex_count()];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                graph.check_vertex(v)?;
                if owner[v] != usize::MAX {
                    return Err(GraphError::Partition(format!("vertex {v} is in two parts")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(GraphError::Partition(format!("vertex {v} is in no part")));
        }
        if let Some(p) = parts.iter().find(|p| p.len() != parts[0].len()) {
            return Err(GraphError::Partition(format!(
                "parts have unequal sizes {} and {}",
                parts[0].len(),
                p.len()
            )));
        }
        if let Some(&(u, v)) = graph.edges().iter().find(|(u, v)| owner[*u] == owner[*v]) {
            return Err(GraphError::Partition(format!(
                "edge {{{u}, {v}}} lies inside part {}",
                owner[u]
            )));
        }
        Ok(PartitionedGraph { graph, parts })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Common part size.
    pub fn n(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }

    /// The `j`-th vertex (0-based) of part `i` (0-based).
    pub fn vertex(&self, i: usize, j: usize) -> Vertex {
        self.parts[i][j]
    }
}

/// One direction per edge, aligned with the graph's canonical edge order.
/// `true` means the edge `(u, v)`, `u < v`, points from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn new(g: &Graph, forward: Vec<bool>) -> Result<Self, GraphError> {
        if forward.len() != g.edge_count() {
            return Err(GraphError::OrientationCount {
                expected: g.edge_count(),
                got: forward.len(),
            });
        }
        Ok(Orientation { forward })
    }

    /// Builds an orientation from one arc `(tail, head)` per edge.
    pub fn from_arcs<I>(g: &Graph, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut forward = vec![false; g.edge_count()];
        let mut set = vec![false; g.edge_count()];
        for (t, h) in arcs {
            let id = g.edge_id(t, h).ok_or(GraphError::BadArc(t, h))?;
            if set[id] {
                return Err(GraphError::DuplicateEdge(t.min(h), t.max(h)));
            }
            set[id] = true;
            forward[id] = t < h;
        }
        if set.iter().any(|s| !s) {
            return Err(GraphError::OrientationCount {
                expected: g.edge_count(),
                got: set.iter().filter(|s| **s).count(),
            });
        }
        Ok(Orientation { forward })
    }

    pub fn is_forward(&self, edge_id: usize) -> bool {
        self.forward[edge_id]
    }

    pub fn set(&mut self, edge_id: usize, forward: bool) {
        self.forward[edge_id] = forward;
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Tail of edge `edge_id`.
    pub fn tail(&self, g: &Graph, edge_id: usize) -> Vertex {
        let (u, v) = g.edges()[edge_id];
        if self.forward[edge_id] {
            u
        } else {
            v
        }
    }

    /// Arcs `(tail, head)` in edge order.
    pub fn arcs(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        g.edges()
            .iter()
            .zip(&self.forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect()
    }

    /// Points edge `{tail, head}` from `tail` to `head`.
    pub fn orient(&mut self, g: &Graph, tail: Vertex, head: Vertex) -> Result<(), GraphError> {
        let id = g.edge_id(tail, head).ok_or(GraphError::BadArc(tail, head))?;
        self.forward[id] = tail < head;
        Ok(())
    }
}

/// Sum of the weights of the edges leaving `v`.
pub fn weighted_outdegree(g: &Graph, w: &EdgeWeighting, lam: &Orientation, v: Vertex) -> u64 {
    g.incident_edges(v)
        .filter(|&id| lam.tail(g, id) == v)
        .map(|id| w.weight(id))
        .sum()
}

/// Weighted outdegrees of all vertices at once.
pub fn weighted_outdegrees(g: &Graph, w: &EdgeWeighting, lam: &Orientation) -> Vec<u64> {
    let mut out = vec![0; g.vertex_count()];
    for id in 0..g.edge_count() {
        out[lam.tail(g, id)] += w.weight(id);
    }
    out
}

/// Wire format shared by graphs, weighted graphs and partitioned graphs:
/// `{"n": .., "edges": [[u, v], ..], "weights"?: [..], "parts"?: [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<Vertex>>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            weights: None,
            parts: None,
        }
    }

    pub fn with_weights(mut self, w: &EdgeWeighting) -> Self {
        self.weights = Some(w.weights().to_vec());
        self
    }

    pub fn with_parts(mut self, parts: &[Vec<Vertex>]) -> Self {
        self.parts = Some(parts.to_vec());
        self
    }

    /// Builds the graph. Weights and parts, when present, are re-aligned to
    /// the canonical edge order by [`GraphJson::weighting`] and
    /// [`GraphJson::partitioned`].
    pub fn graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn weighting(&self, g: &Graph) -> Result<Option<EdgeWeighting>, GraphError> {
        let Some(ws) = &self.weights else {
            return Ok(None);
        };
        if ws.len() != self.edges.len() {
            return Err(GraphError::WeightCount {
                expected: self.edges.len(),
                got: ws.len(),
            });
        }
        let triples = self.edges.iter().zip(ws).map(|(e, &w)| (e[0], e[1], w));
        EdgeWeighting::from_triples(g, triples).map(Some)
    }

    pub fn partitioned(&self) -> Result<PartitionedGraph, GraphError> {
        let parts = self
            .parts
            .clone()
            .ok_or_else(|| GraphError::Partition("missing \"parts\"".into()))?;
        PartitionedGraph::new(self.graph()?, parts)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from_graph(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .graph()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for PartitionedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from_graph(&self.graph)
            .with_parts(&self.parts)
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .partitioned()
            .map_err(serde::de::Error::custom)
    }
}

/// Orientation wire format: `{"arcs": [[tail, head], ..]}` in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    pub arcs: Vec<[Vertex; 2]>,
}

impl OrientationJson {
    pub fn from_orientation(g: &Graph, lam: &Orientation) -> Self {
        OrientationJson {
            arcs: lam.arcs(g).into_iter().map(|(t, h)| [t, h]).collect(),
        }
    }

    pub fn orientation(&self, g: &Graph) -> Result<Orientation, GraphError> {
        Orientation::from_arcs(g, self.arcs.iter().map(|a| (a[0], a[1])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn induced_subgraph_examples() {
        let tri = Graph::complete(3);
        let (all, _) = tri.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(all, tri);
        let (e, _) = tri.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(e.edges(), &[(0, 1)]);

        let p4 = Graph::path(4);
        let (sub, map) = p4.induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edges(), &[(map[&2], map[&3])]);
        assert_eq!(map[&0], 0);

        assert!(tri.induced_subgraph(&[5]).is_err());
    }

    #[test]
    fn remove_vertices_examples() {
        let (k3, _) = Graph::complete(4).remove_vertices(&[0]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let p = Graph::path(5);
        assert_eq!(p.remove_vertices(&[]).unwrap().0, p);
        let (rest, _) = Graph::star(3).remove_vertices(&[0]).unwrap();
        assert_eq!(rest.vertex_count(), 3);
        assert_eq!(rest.edge_count(), 0);
    }

    #[test]
    fn clique_examples() {
        assert!(Graph::cycle(4).is_clique(&[]).unwrap());
        assert!(Graph::complete(4).is_clique(&[0, 1, 2, 3]).unwrap());
        assert!(!Graph::cycle(4).is_clique(&[0, 1, 2, 3]).unwrap());
        assert!(Graph::complete(2).is_clique(&[0, 7]).is_err());
    }

    #[test]
    fn outdegree_examples() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let w = EdgeWeighting::new(&g, vec![5]).unwrap();
        let lam = Orientation::from_arcs(&g, [(0, 1)]).unwrap();
        assert_eq!(weighted_outdegree(&g, &w, &lam, 0), 5);
        assert_eq!(weighted_outdegree(&g, &w, &lam, 1), 0);
        assert_eq!(weighted_outdegree(&g, &w, &lam, 2), 0);

        // directed cycle 0 -> 1 -> 2 -> 0 with w(01)=1, w(12)=2, w(02)=3
        let tri = Graph::complete(3);
        let w = EdgeWeighting::from_triples(&tri, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        let lam = Orientation::from_arcs(&tri, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let outs: Vec<u64> = (0..3).map(|v| weighted_outdegree(&tri, &w, &lam, v)).collect();
        assert_eq!(outs, vec![1, 2, 3]);
        assert_eq!(outs.iter().sum::<u64>(), 6);
    }

    #[test]
    fn weighting_and_partition_validation() {
        let g = Graph::path(3);
        assert!(matches!(
            EdgeWeighting::new(&g, vec![1]),
            Err(GraphError::WeightCount { .. })
        ));
        assert_eq!(EdgeWeighting::new(&g, vec![1, 0]), Err(GraphError::ZeroWeight(1, 2)));
        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        assert!(PartitionedGraph::new(g.clone(), vec![vec![0, 1], vec![2, 3]]).is_ok());
        assert!(PartitionedGraph::new(g.clone(), vec![vec![0, 2], vec![1, 3]]).is_err());
        assert!(PartitionedGraph::new(g.clone(), vec![vec![0], vec![1, 2, 3]]).is_err());
        assert!(PartitionedGraph::new(g, vec![vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn json_aligns_weights_given_in_any_edge_order() {
        let text = r#"{"n":3,"edges":[[1,2],[0,1]],"weights":[7,4]}"#;
        let j: GraphJson = serde_json::from_str(text).unwrap();
        let g = j.graph().unwrap();
        let w = j.weighting(&g).unwrap().unwrap();
        assert_eq!(w.weight(g.edge_id(0, 1).unwrap()), 4);
        assert_eq!(w.weight(g.edge_id(1, 2).unwrap()), 7);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn outdegrees_sum_to_total_weight(
            g in arb_graph(),
            seed in proptest::collection::vec((1u64..9, any::<bool>()), 36)
        ) {
            let w = EdgeWeighting::new(&g, seed.iter().take(g.edge_count()).map(|s| s.0).collect()).unwrap();
            let lam = Orientation::new(&g, seed.iter().take(g.edge_count()).map(|s| s.1).collect()).unwrap();
            let sum: u64 = g.vertices().map(|v| weighted_outdegree(&g, &w, &lam, v)).sum();
            prop_assert_eq!(sum, w.total_weight());
            prop_assert_eq!(w.total_weight(), w.weights().iter().sum::<u64>());
        }

        #[test]
        fn adjacency_matches_edges(g in arb_graph()) {
            for u in g.vertices() {
                for v in g.vertices() {
                    let in_list = g.edges().contains(&(u.min(v), u.max(v))) && u != v;
                    prop_assert_eq!(g.has_edge(u, v), in_list);
                    prop_assert_eq!(g.neighbors(u).contains(&v), in_list);
                }
            }
        }

        #[test]
        fn removal_and_clique_monotonicity(g in arb_graph(), mask in any::<u16>()) {
            let x: Vec<usize> = g.vertices().filter(|v| mask >> v & 1 == 1).collect();
            let (rest, _) = g.remove_vertices(&x).unwrap();
            prop_assert_eq!(rest.vertex_count(), g.vertex_count() - x.len());
            if g.is_clique(&x).unwrap() {
                for drop in 0..x.len() {
                    let mut sub = x.clone();
                    sub.remove(drop);
                    prop_assert!(g.is_clique(&sub).unwrap());
                }
            }
        }

        #[test]
        fn json_round_trips(g in arb_graph(), bits in proptest::collection::vec(any::<bool>(), 36)) {
            let text = serde_json::to_string(&g).unwrap();
            prop_assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g.clone());

            let w = EdgeWeighting::new(&g, (1..=g.edge_count() as u64).collect()).unwrap();
            let j: GraphJson = serde_json::from_str(&serde_json::to_string(&GraphJson::from_graph(&g).with_weights(&w)).unwrap()).unwrap();
            prop_assert_eq!(j.weighting(&g).unwrap(), Some(w));

            let lam = Orientation::new(&g, bits[..g.edge_count()].to_vec()).unwrap();
            let oj: OrientationJson = serde_json::from_str(&serde_json::to_string(&OrientationJson::from_orientation(&g, &lam)).unwrap()).unwrap();
            prop_assert_eq!(oj.orientation(&g).unwrap(), lam);
        }
    }

    #[test]
    fn partitioned_json_round_trip() {
        let g = Graph::new(4, [(0, 2), (1, 2)]).unwrap();
        let pg = PartitionedGraph::new(g, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let text = serde_json::to_string(&pg).unwrap();
        assert_eq!(serde_json::from_str::<PartitionedGraph>(&text).unwrap(), pg);
    }
}
