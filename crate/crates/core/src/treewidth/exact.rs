use super::{from_elimination_order, TdError, TreeDecomposition};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_EXACT_LIMIT: usize = 18;

/// The subset table has `2^n` entries; no limit may go above this.
pub const HARD_EXACT_LIMIT: usize = 26;

/// Exact treewidth by dynamic programming over sets of eliminated vertices.
///
/// `best(S)` is the smallest possible maximum higher-neighborhood size when
/// the vertices of `S` are eliminated first. Eliminating `v` last within `S`
/// gives it the neighborhood `Q(S \ {v}, v)`: the vertices outside `S` that
/// `v` reaches through `S \ {v}`. The table recovers an optimal order, and
/// the returned witness is its fill-in decomposition.
pub fn exact_treewidth(g: &Graph, limit: usize) -> Result<(i64, TreeDecomposition), TdError> {
    let n = g.vertex_count();
    let limit = limit.min(HARD_EXACT_LIMIT);
    if n > limit {
        return Err(TdError::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok((-1, TreeDecomposition::single_bag(Vec::new())));
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut best = vec![i8::MAX; size];
    let mut last = vec![0u8; size];
    best[0] = -1;
    for s in 1..size as u32 {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let q = reach_outside(&adj, v, rest, full) as i8;
            let cand = best[rest as usize].max(q);
            if cand < best[s as usize] {
                best[s as usize] = cand;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let td = from_elimination_order(g, &order)?;
    let tw = i64::from(best[full as usize]);
    debug_assert_eq!(td.width(), tw);
    Ok((tw, td))
}

/// `|Q(rest, v)|`: vertices outside `rest ∪ {v}` reachable from `v` by paths
/// whose interior lies in `rest`.
fn reach_outside(adj: &[u32], v: usize, rest: u32, full: u32) -> u32 {
    let mut visited = 1u32 << v;
    let mut frontier = adj[v] & rest;
    let mut found = adj[v] & !rest;
    while frontier != 0 {
        visited |= frontier;
        let mut next = 0u32;
        let mut bits = frontier;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[u];
        }
        found |= next & !rest;
        frontier = next & rest & !visited;
    }
    (found & !(1 << v) & full).count_ones()
}
