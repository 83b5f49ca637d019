use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{TdError, TreeDecomposition};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    MinFill,
    MinDegree,
}

/// Randomized restarts run when a nonzero seed is given.
pub const HEURISTIC_RESTARTS: usize = 8;

/// Fill-in decomposition: eliminating `v` creates the bag of `v` and its
/// not-yet-eliminated neighbors in the fill graph, and that bag hangs below
/// the bag of the earliest-eliminated of those neighbors. Node `i` holds the
/// bag of the `i`-th eliminated vertex. Roots of separate components are
/// chained together.
pub fn from_elimination_order(g: &Graph, order: &[Vertex]) -> Result<TreeDecomposition, TdError> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(TdError::BadOrder(format!("{} entries for {n} vertices", order.len())));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(TdError::BadOrder(format!("vertex {v} repeated or out of range")));
        }
        position[v] = i;
    }
    if n == 0 {
        return Ok(TreeDecomposition::single_bag(Vec::new()));
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let higher: Vec<Vertex> = adj[v].iter().copied().filter(|&u| position[u] > i).collect();
        for (a, &x) in higher.iter().enumerate() {
            for &y in &higher[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        match higher.iter().map(|&u| position[u]).min() {
            Some(p) => tree_edges.push((i, p)),
            None => roots.push(i),
        }
        let mut bag = higher;
        bag.push(v);
        bags.push(bag);
    }
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    TreeDecomposition::from_edges(bags, &tree_edges)
}

/// Greedy elimination by minimum fill-in or minimum degree in the current
/// fill graph, ties broken by lowest vertex index.
///
/// With `seed == 0` only that deterministic run is made. Any other seed adds
/// [`HEURISTIC_RESTARTS`] runs that break ties uniformly at random (ChaCha8
/// seeded with `seed`); the narrowest result wins, earlier runs first on ties,
/// so the output never exceeds the deterministic width.
pub fn heuristic_decomposition(g: &Graph, method: Heuristic, seed: u64) -> TreeDecomposition {
    let mut best = greedy_order(g, method, None);
    let mut best_width = order_width(g, &best);
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..HEURISTIC_RESTARTS {
            let order = greedy_order(g, method, Some(&mut rng));
            let w = order_width(g, &order);
            if w < best_width {
                best = order;
                best_width = w;
            }
        }
    }
    from_elimination_order(g, &best).expect("greedy order is a permutation")
}

fn greedy_order(g: &Graph, method: Heuristic, mut rng: Option<&mut ChaCha8Rng>) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best_score = usize::MAX;
        let mut ties: Vec<Vertex> = Vec::new();
        for v in (0..n).filter(|&v| alive[v]) {
            let score = match method {
                Heuristic::MinDegree => adj[v].len(),
                Heuristic::MinFill => fill_in(&adj, v),
            };
            if score < best_score {
                best_score = score;
                ties.clear();
            }
            if score == best_score {
                ties.push(v);
            }
        }
        let v = match rng.as_deref_mut() {
            Some(r) => *ties.choose(r).expect("at least one candidate"),
            None => ties[0],
        };
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for (a, &x) in nbrs.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nbrs[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

fn fill_in(adj: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
    nbrs.iter()
        .enumerate()
        .map(|(a, &x)| nbrs[a + 1..].iter().filter(|y| !adj[x].contains(y)).count())
        .sum()
}

fn order_width(g: &Graph, order: &[Vertex]) -> i64 {
    from_elimination_order(g, order).expect("permutation").width()
}
