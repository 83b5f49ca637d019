use std::collections::BTreeSet;

use super::{GadgetIndex, ReductionError, ReductionOutput, Role};
use crate::graph::{Graph, PartitionedGraph, Vertex};
use crate::problems::{Color, ListColoringInstance, PrecoloringExtensionInstance};
use crate::treewidth::{heuristic_decomposition, Heuristic, TreeDecomposition};

/// Partitioned clique to list coloring.
///
/// Vertex `i - 1` is the selector of part `i`, listing the colors `v + 1`
/// of the part's vertices. Every non-adjacent pair `u ∈ V_i`, `v ∈ V_j`
/// (`i < j`) gets a pad vertex with list `{u + 1, v + 1}` joined to both
/// selectors, so choosing `u` and `v` together forces the pad into a clash.
/// Pads are numbered after the selectors in `(i, j, u, v)` order.
pub fn pc_to_list_coloring(pg: &PartitionedGraph) -> ReductionOutput<ListColoringInstance> {
    let g = pg.graph();
    let k = pg.k();
    let color = |v: Vertex| (v + 1) as Color;
    let mut index = GadgetIndex::new();
    let mut lists: Vec<Vec<Color>> = Vec::new();
    for (i, part) in pg.parts().iter().enumerate() {
        index.insert(i, Role::Selector { i: i + 1 });
        lists.push(part.iter().map(|&v| color(v)).collect());
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for &u in &pg.parts()[i] {
                for &v in &pg.parts()[j] {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let pad = lists.len();
                    index.insert(pad, Role::Pad { u, v });
                    lists.push(vec![color(u), color(v)]);
                    edges.push((i, pad));
                    edges.push((j, pad));
                }
            }
        }
    }
    let target = Graph::new(lists.len(), edges).expect("pads join distinct selectors");
    let selectors: Vec<Vertex> = (0..k).collect();
    let witness = TreeDecomposition::single_bag(selectors.clone())
        .attach_all((k..lists.len()).map(|pad| (0, selectors.iter().copied().chain([pad]).collect())));
    ReductionOutput {
        instance: ListColoringInstance::new(target, lists).expect("colors are positive"),
        witness,
        claimed_width_bound: k as i64 + 1,
        index,
        aux: Vec::new(),
        note: None,
        detail: (),
    }
}

/// List coloring to precoloring extension.
///
/// Colors in the union of the lists are relabeled `1..=r` in increasing
/// order. Each vertex `v` gets one pendant per color missing from its list,
/// precolored with that color. `base` is a decomposition of the source
/// graph; a min-fill one is computed when absent. Pendants get bags
/// `{v, pendant}` hanging off a node containing `v`.
///
/// With an empty color universe and at least one vertex no coloring exists;
/// the output is then the canonical no-instance `K2` with both ends
/// precolored 1.
pub fn lc_to_precoloring(
    inst: &ListColoringInstance,
    base: Option<&TreeDecomposition>,
) -> Result<ReductionOutput<PrecoloringExtensionInstance>, ReductionError> {
    let g = inst.graph();
    let universe: BTreeSet<Color> = inst.lists().iter().flatten().copied().collect();
    if universe.is_empty() && g.vertex_count() > 0 {
        let mut index = GadgetIndex::new();
        index.insert(0, Role::Canonical { k: 1 });
        index.insert(1, Role::Canonical { k: 2 });
        return Ok(ReductionOutput {
            instance: PrecoloringExtensionInstance::new(Graph::complete(2), vec![Some(1), None], 1)?,
            witness: TreeDecomposition::single_bag(vec![0, 1]),
            claimed_width_bound: 1,
            index,
            aux: Vec::new(),
            note: Some("every list is empty: canonical infeasible instance".into()),
            detail: (),
        });
    }
    let rank = |c: Color| universe.iter().position(|&x| x == c).unwrap() as Color + 1;
    let base = match base {
        Some(td) => {
            td.validate(g)?;
            td.clone()
        }
        None => heuristic_decomposition(g, Heuristic::MinFill, 0),
    };
    let mut index = GadgetIndex::new();
    for v in g.vertices() {
        index.insert(v, Role::Original { v });
    }
    let mut edges = g.edges().to_vec();
    let mut precolor = vec![None; g.vertex_count()];
    let mut extra = Vec::new();
    for v in g.vertices() {
        let node = base.node_containing(v).expect("validated decomposition covers every vertex");
        for &c in universe.iter().filter(|c| inst.list(v).binary_search(c).is_err()) {
            let p = precolor.len();
            precolor.push(Some(rank(c)));
            index.insert(p, Role::Pendant { v, color: c });
            edges.push((v, p));
            extra.push((node, vec![v, p]));
        }
    }
    let target = Graph::new(precolor.len(), edges)?;
    let witness = base.attach_all(extra);
    let bound = base.width().max(1);
    Ok(ReductionOutput {
        instance: PrecoloringExtensionInstance::new(target, precolor, universe.len().max(1) as Color)?,
        witness,
        claimed_width_bound: bound,
        index,
        aux: Vec::new(),
        note: None,
        detail: (),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{bf_list_coloring, bf_partitioned_clique, bf_precoloring};

    fn pg(n: usize, edges: &[(usize, usize)], parts: Vec<Vec<usize>>) -> PartitionedGraph {
        PartitionedGraph::new(Graph::new(n, edges.iter().copied()).unwrap(), parts).unwrap()
    }

    #[test]
    fn single_cross_edge() {
        let out = pc_to_list_coloring(&pg(2, &[(0, 1)], vec![vec![0], vec![1]]));
        assert_eq!(out.instance.graph().vertex_count(), 2);
        assert_eq!(out.instance.lists(), &[vec![1], vec![2]]);
        assert!(bf_list_coloring(&out.instance).is_some());
        out.check_witnesses().unwrap();
    }

    #[test]
    fn one_edge_in_two_by_two() {
        let p = pg(4, &[(0, 2)], vec![vec![0, 1], vec![2, 3]]);
        let out = pc_to_list_coloring(&p);
        let pads: Vec<_> = (2..5).map(|v| out.index.role(v).unwrap()).collect();
        assert_eq!(
            pads,
            vec![Role::Pad { u: 0, v: 3 }, Role::Pad { u: 1, v: 2 }, Role::Pad { u: 1, v: 3 }]
        );
        let col = bf_list_coloring(&out.instance).unwrap();
        assert_eq!(&col[..2], &[1, 3]);
        assert_eq!(bf_partitioned_clique(&p), Some(vec![0, 2]));
        assert!(out.witness_width() <= 3);
    }

    #[test]
    fn missing_cross_edge_is_uncolorable() {
        let out = pc_to_list_coloring(&pg(2, &[], vec![vec![0], vec![1]]));
        assert_eq!(out.instance.list(2), &[1, 2]);
        assert!(bf_list_coloring(&out.instance).is_none());
        out.check_witnesses().unwrap();
    }

    #[test]
    fn pendants_encode_lists() {
        let inst = ListColoringInstance::new(Graph::new(2, []).unwrap(), vec![vec![1], vec![2]]).unwrap();
        let out = lc_to_precoloring(&inst, None).unwrap();
        assert_eq!(out.instance.r(), 2);
        assert_eq!(out.instance.precolor(), &[None, None, Some(2), Some(1)]);
        assert!(bf_precoloring(&out.instance).is_some());
        out.check_witnesses().unwrap();

        let k2 = ListColoringInstance::new(Graph::complete(2), vec![vec![1], vec![1]]).unwrap();
        let out = lc_to_precoloring(&k2, None).unwrap();
        assert_eq!(out.instance.r(), 1);
        assert!(bf_precoloring(&out.instance).is_none());
    }

    #[test]
    fn colors_are_relabeled() {
        let inst = ListColoringInstance::new(Graph::path(2), vec![vec![5], vec![9, 5]]).unwrap();
        let out = lc_to_precoloring(&inst, None).unwrap();
        assert_eq!(out.instance.r(), 2);
        assert_eq!(out.instance.precolor()[2], Some(2));
        assert_eq!(out.index.role(2), Some(Role::Pendant { v: 0, color: 9 }));
        assert!(bf_precoloring(&out.instance).is_some());
    }

    #[test]
    fn empty_universe() {
        let inst = ListColoringInstance::new(Graph::empty(3), vec![vec![]; 3]).unwrap();
        let out = lc_to_precoloring(&inst, None).unwrap();
        assert!(out.note.is_some());
        assert!(bf_precoloring(&out.instance).is_none());
        let none = ListColoringInstance::new(Graph::empty(0), vec![]).unwrap();
        let out = lc_to_precoloring(&none, None).unwrap();
        assert!(bf_precoloring(&out.instance).is_some());
    }
}
