use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeWeighting, Graph, PartitionedGraph, Vertex};
use crate::problems::{Color, ListColoringInstance};

/// splitmix64 of `seed` advanced by `index + 1` golden-ratio steps.
pub fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Balanced `k`-partite graph; vertex `j` of part `i` is `i * n + j`. Cross
/// pairs are drawn in `(i, j, i', j')` order. With `plant`, a random
/// transversal is then completed to a clique.
pub fn gen_partitioned(k: usize, n: usize, p: f64, plant: bool, seed: u64) -> PartitionedGraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..n {
            for ip in i + 1..k {
                for jp in 0..n {
                    if rng.gen_bool(p) {
                        edges.push((i * n + j, ip * n + jp));
                    }
                }
            }
        }
    }
    if plant && n > 0 {
        let pick: Vec<Vertex> = (0..k).map(|i| i * n + rng.gen_range(0..n)).collect();
        for (a, &u) in pick.iter().enumerate() {
            for &v in &pick[a + 1..] {
                if !edges.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
    }
    let g = Graph::new(k * n, edges).expect("cross pairs are distinct");
    let parts = (0..k).map(|i| (i * n..(i + 1) * n).collect()).collect();
    PartitionedGraph::new(g, parts).expect("no intra-part edge")
}

/// `G(n, edge_p)` with weights drawn from `1..=max_w`, in edge order.
pub fn gen_weighted(n: usize, edge_p: f64, max_w: u64, seed: u64) -> (Graph, EdgeWeighting) {
    gen_weighted_capped(n, edge_p, max_w, None, seed)
}

/// [`gen_weighted`] keeping at most `max_edges` edges.
pub fn gen_weighted_capped(
    n: usize,
    edge_p: f64,
    max_w: u64,
    max_edges: Option<usize>,
    seed: u64,
) -> (Graph, EdgeWeighting) {
    let mut rng = rng(seed);
    let g = random_graph(&mut rng, n, edge_p, max_edges);
    let weights = (0..g.edge_count()).map(|_| rng.gen_range(1..=max_w.max(1))).collect();
    let w = EdgeWeighting::new(&g, weights).expect("positive weights");
    (g, w)
}

/// One value per vertex, `ρ(v)` drawn from `0..=bounds[v]`.
pub fn gen_rho(bounds: &[u64], seed: u64) -> Vec<u64> {
    let mut rng = rng(seed);
    bounds.iter().map(|&b| rng.gen_range(0..=b)).collect()
}

/// `G(n, p)`; with `max_edges`, a uniformly random subset of that many
/// edges is kept.
pub(crate) fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_edges: Option<usize>) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if let Some(cap) = max_edges {
        if edges.len() > cap {
            edges.shuffle(rng);
            edges.truncate(cap);
        }
    }
    Graph::new(n, edges).expect("distinct pairs")
}

/// Random list-coloring instance: `G(n, p)` and lists that are random
/// subsets of `1..=colors` (each color kept with probability one half).
pub fn gen_list_coloring(n: usize, p: f64, colors: u32, seed: u64) -> ListColoringInstance {
    let mut rng = rng(seed);
    let g = random_graph(&mut rng, n, p, None);
    let lists = (0..n)
        .map(|_| (1..=colors).filter(|_| rng.gen_bool(0.5)).collect::<Vec<Color>>())
        .collect();
    ListColoringInstance::new(g, lists).expect("colors are positive")
}

/// `G(n, p)`, plus a clique on `k` random vertices when `plant` is set.
pub fn gen_graph(n: usize, p: f64, k: usize, plant: bool, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let g = random_graph(&mut rng, n, p, None);
    if !plant || k > n {
        return g;
    }
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(&mut rng);
    let mut chosen = vs[..k].to_vec();
    chosen.sort_unstable();
    let mut edges = g.edges().to_vec();
    for (a, &u) in chosen.iter().enumerate() {
        for &v in &chosen[a + 1..] {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("new pairs only")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitioned_extremes() {
        let full = gen_partitioned(3, 2, 1.0, false, 5);
        assert_eq!(full.graph().edge_count(), 12);
        assert_eq!(gen_partitioned(3, 2, 0.0, false, 5).graph().edge_count(), 0);
        let planted = gen_partitioned(4, 3, 0.0, true, 9);
        assert_eq!(planted.graph().edge_count(), 6);
        assert!(crate::problems::bf_partitioned_clique(&planted).is_some());
    }

    #[test]
    fn weighted_extremes_and_determinism() {
        let (g, _) = gen_weighted(6, 0.0, 4, 1);
        assert_eq!(g.edge_count(), 0);
        let (g, w) = gen_weighted(6, 0.7, 1, 1);
        assert!(g.edge_count() == 0 || w.is_uniform() == Some(1));
        assert_eq!(gen_weighted(7, 0.5, 4, 42), gen_weighted(7, 0.5, 4, 42));
        assert_eq!(gen_rho(&[3, 3, 3], 8), gen_rho(&[3, 3, 3], 8));
        assert!(gen_rho(&[0, 2], 3).iter().zip([0, 2]).all(|(&r, b)| r <= b));
    }

    #[test]
    fn mix_spreads_cases() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| mix(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(mix(7, 0), mix(8, 0));
    }
}
