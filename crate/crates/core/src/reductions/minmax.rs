use super::{GadgetIndex, ReductionError, ReductionOutput, Role};
use crate::graph::{EdgeWeighting, Graph, Vertex};
use crate::problems::{ChosenOutdegreeInstance, MinMaxOutdegreeInstance, DEFAULT_WEIGHT_CEILING};
use crate::treewidth::{heuristic_decomposition, Heuristic, TreeDecomposition};

/// Chosen maximum outdegree to minimum maximum outdegree with `r = max ρ`.
///
/// Each vertex `v` with `ρ(v) < r` gets a triangle `v, x_v, y_v` with
/// weights `r - ρ(v)` on both edges at `v` and `r` on `x_v y_v`; the
/// triangle absorbs exactly `r - ρ(v)` of `v`'s budget. Source vertices keep
/// their ids and triangle vertices follow in order of `v`. `base`
/// decomposes the source graph (min-fill when absent); every triangle adds
/// a bag hanging off a node containing `v`.
///
/// `r = 0` cannot be expressed (weights and `r` must be positive). The
/// answer is then yes exactly when the graph is edgeless, and the output is
/// a canonical instance with that answer: one isolated vertex, or `K2`
/// with weight 2, both at `r = 1`.
pub fn chosen_to_minmax(
    inst: &ChosenOutdegreeInstance,
    base: Option<&TreeDecomposition>,
) -> Result<ReductionOutput<MinMaxOutdegreeInstance>, ReductionError> {
    let g = inst.graph();
    if g.vertex_count() == 0 {
        return Err(ReductionError::Input("graph has no vertices".into()));
    }
    let r = inst.rho().iter().copied().max().unwrap_or(0);
    if r == 0 {
        return Ok(canonical(g.edge_count() == 0)?);
    }
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
    let mut triples: Vec<(Vertex, Vertex, u64)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, &(s, t))| (s, t, inst.weights().weight(id)))
        .collect();
    let mut next = g.vertex_count();
    let mut extra = Vec::new();
    for v in g.vertices() {
        let gap = r - inst.rho()[v];
        if gap == 0 {
            continue;
        }
        let (x, y) = (next, next + 1);
        next += 2;
        index.insert(x, Role::TriangleX { v });
        index.insert(y, Role::TriangleY { v });
        triples.extend([(v, x, gap), (v, y, gap), (x, y, r)]);
        let node = base.node_containing(v).expect("validated decomposition covers every vertex");
        extra.push((node, vec![v, x, y]));
    }
    let h = Graph::new(next, triples.iter().map(|&(s, t, _)| (s, t)))?;
    let w = EdgeWeighting::from_triples(&h, triples.iter().copied())?;
    let ceiling = DEFAULT_WEIGHT_CEILING.max(w.total_weight());
    Ok(ReductionOutput {
        instance: MinMaxOutdegreeInstance::with_ceiling(h, w, r, ceiling)?,
        witness: base.attach_all(extra),
        claimed_width_bound: base.width().max(2),
        index,
        aux: Vec::new(),
        note: None,
        detail: (),
    })
}

fn canonical(yes: bool) -> Result<ReductionOutput<MinMaxOutdegreeInstance>, ReductionError> {
    let mut index = GadgetIndex::new();
    index.insert(0, Role::Canonical { k: 1 });
    let (g, w, note) = if yes {
        let g = Graph::empty(1);
        let w = EdgeWeighting::new(&g, vec![])?;
        (g, w, "all rho are zero and the graph is edgeless: canonical yes-instance")
    } else {
        index.insert(1, Role::Canonical { k: 2 });
        let g = Graph::complete(2);
        let w = EdgeWeighting::uniform(&g, 2)?;
        (g, w, "all rho are zero but some edge exists: canonical no-instance")
    };
    let witness = TreeDecomposition::single_bag(g.vertices().collect());
    Ok(ReductionOutput {
        instance: MinMaxOutdegreeInstance::new(g, w, 1)?,
        witness,
        claimed_width_bound: 2,
        index,
        aux: Vec::new(),
        note: Some(note.into()),
        detail: (),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{bf_chosen_outdegree, bf_min_max_outdegree};

    #[test]
    fn constant_rho_is_identity() {
        let g = Graph::cycle(4);
        let w = EdgeWeighting::uniform(&g, 3).unwrap();
        let inst = ChosenOutdegreeInstance::new(g.clone(), w, vec![3; 4]).unwrap();
        let out = chosen_to_minmax(&inst, None).unwrap();
        assert_eq!(out.instance.graph(), &g);
        assert_eq!(out.instance.r(), 3);
        out.check_witnesses().unwrap();
    }

    #[test]
    fn k2_with_one_triangle() {
        let g = Graph::complete(2);
        let w = EdgeWeighting::uniform(&g, 2).unwrap();
        let inst = ChosenOutdegreeInstance::new(g, w, vec![2, 0]).unwrap();
        let out = chosen_to_minmax(&inst, None).unwrap();
        let h = out.instance.graph();
        assert_eq!((h.vertex_count(), h.edge_count()), (4, 4));
        assert_eq!(out.instance.weights().weights(), &[2, 2, 2, 2]);
        assert!(bf_min_max_outdegree(&out.instance).is_some());
        assert!(bf_chosen_outdegree(&inst).is_some());
        out.check_witnesses().unwrap();
    }

    #[test]
    fn zero_budgets() {
        for (g, yes) in [(Graph::empty(3), true), (Graph::path(3), false)] {
            let w = EdgeWeighting::uniform(&g, 1).unwrap();
            let inst = ChosenOutdegreeInstance::new(g.clone(), w, vec![0; 3]).unwrap();
            let out = chosen_to_minmax(&inst, None).unwrap();
            assert_eq!(bf_min_max_outdegree(&out.instance).is_some(), yes);
            assert_eq!(bf_chosen_outdegree(&inst).is_some(), yes);
            out.check_witnesses().unwrap();
        }
    }
}
