//! Witness checkers. Each re-tests the defining condition of its problem
//! directly and shares no code with the solvers.

use super::{
    ChosenOutdegreeInstance, Color, EquitableColoringInstance, GeneralFactorInstance, GensatInstance,
    ListColoringInstance, MinMaxOutdegreeInstance, PrecoloringExtensionInstance,
};
use crate::graph::{weighted_outdegree, EdgeWeighting, Graph, Orientation, PartitionedGraph, Vertex};

fn is_proper(g: &Graph, coloring: &[Color]) -> bool {
    coloring.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

pub fn is_list_coloring(inst: &ListColoringInstance, coloring: &[Color]) -> bool {
    is_proper(inst.graph(), coloring) && coloring.iter().enumerate().all(|(v, c)| inst.list(v).contains(c))
}

pub fn is_precoloring_extension(inst: &PrecoloringExtensionInstance, coloring: &[Color]) -> bool {
    is_proper(inst.graph(), coloring)
        && coloring.iter().all(|&c| (1..=inst.r()).contains(&c))
        && inst
            .precolor()
            .iter()
            .zip(coloring)
            .all(|(p, c)| p.is_none_or(|p| p == *c))
}

pub fn is_equitable_coloring(inst: &EquitableColoringInstance, coloring: &[Color]) -> bool {
    if !is_proper(inst.graph(), coloring) || coloring.iter().any(|&c| c == 0 || c > inst.r()) {
        return false;
    }
    let mut sizes = vec![0usize; inst.r() as usize];
    for &c in coloring {
        sizes[c as usize - 1] += 1;
    }
    let lo = sizes.iter().min().copied().unwrap_or(0);
    let hi = sizes.iter().max().copied().unwrap_or(0);
    hi - lo <= 1
}

/// `factor` lists edge ids.
pub fn is_general_factor(inst: &GeneralFactorInstance, factor: &[usize]) -> bool {
    let g = inst.graph();
    let mut deg = vec![0usize; g.vertex_count()];
    let mut used = vec![false; g.edge_count()];
    for &e in factor {
        if e >= g.edge_count() || used[e] {
            return false;
        }
        used[e] = true;
        let (u, v) = g.edges()[e];
        deg[u] += 1;
        deg[v] += 1;
    }
    g.vertices().all(|v| inst.cardinality_set(v).contains(&deg[v]))
}

pub fn satisfies(inst: &GensatInstance, assignment: &[bool]) -> bool {
    assignment.len() == inst.variable_count()
        && inst.constraints().iter().all(|c| {
            let t: Vec<bool> = c.scope.iter().map(|&x| assignment[x]).collect();
            inst.relation_of(c).tuples().iter().any(|r| *r == t)
        })
}

pub fn is_rho_admissible(g: &Graph, w: &EdgeWeighting, rho: &[u64], lam: &Orientation) -> bool {
    lam.len() == g.edge_count() && g.vertices().all(|v| weighted_outdegree(g, w, lam, v) <= rho[v])
}

pub fn is_admissible(inst: &ChosenOutdegreeInstance, lam: &Orientation) -> bool {
    is_rho_admissible(inst.graph(), inst.weights(), inst.rho(), lam)
}

pub fn is_minmax_witness(inst: &MinMaxOutdegreeInstance, lam: &Orientation) -> bool {
    let rho = vec![inst.r(); inst.graph().vertex_count()];
    is_rho_admissible(inst.graph(), inst.weights(), &rho, lam)
}

/// One vertex from each part, pairwise adjacent.
pub fn is_transversal_clique(pg: &PartitionedGraph, set: &[Vertex]) -> bool {
    set.len() == pg.k()
        && set.iter().zip(pg.parts()).all(|(v, part)| part.contains(v))
        && pg.graph().is_clique(set).unwrap_or(false)
}

/// `k` distinct vertices, pairwise adjacent.
pub fn is_k_clique(g: &Graph, set: &[Vertex], k: usize) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == k && set.len() == k && g.is_clique(&s).unwrap_or(false)
}
