use super::{binomial2, AuxWitness, GadgetIndex, ReductionError, ReductionOutput, Role};
use crate::graph::{Graph, Vertex};
use crate::problems::{build_dual, build_incidence, BooleanRelation, Constraint, GensatInstance};
use crate::treewidth::{augment_with_set, decompose_forest, TreeDecomposition};

/// Clique to generalized satisfiability.
///
/// Block `i` holds variables `x_{i,1..n}` at ids `(i-1)n .. in`; a block
/// encodes a vertex as its indicator vector. One shared relation of arity
/// `2n` lists, for each edge `p < q`, the indicator of `p` followed by the
/// indicator of `q`. Constraint `C_{i,j}` (`i < j`, lexicographic) applies
/// it to blocks `i` and `j`.
///
/// The main witness decomposes the incidence graph (constraints are vertex
/// `variables + index`); removing the constraints leaves isolated
/// variables, so the bound is `C(k,2)`. The dual graph is a clique on the
/// constraints, witnessed by a single bag.
pub fn clique_to_gensat(g: &Graph, k: usize) -> Result<ReductionOutput<GensatInstance>, ReductionError> {
    let n = g.vertex_count();
    if k < 2 {
        return Err(ReductionError::Input(format!("k = {k}; need k >= 2")));
    }
    if n == 0 {
        return Err(ReductionError::Input("graph has no vertices".into()));
    }
    let indicator = |p: Vertex| (0..n).map(move |l| l == p);
    let tuples = g
        .edges()
        .iter()
        .map(|&(p, q)| indicator(p).chain(indicator(q)).collect())
        .collect();
    let relation = BooleanRelation::new(2 * n, tuples)?;
    let variables = k * n;
    let block = |i: usize| (i * n..(i + 1) * n).collect::<Vec<_>>();

    let mut index = GadgetIndex::new();
    for i in 0..k {
        for l in 0..n {
            index.insert(i * n + l, Role::Variable { i: i + 1, l: l + 1 });
        }
    }
    let mut constraints = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            index.insert(variables + constraints.len(), Role::Constraint { i: i + 1, j: j + 1 });
            constraints.push(Constraint {
                scope: block(i).into_iter().chain(block(j)).collect(),
                relation: 0,
            });
        }
    }
    let s = constraints.len();
    let instance = GensatInstance::new(variables, vec![relation], constraints)?;

    let incidence = build_incidence(&instance);
    let constraint_vertices: Vec<Vertex> = (variables..variables + s).collect();
    let (rest, _) = incidence.remove_vertices(&constraint_vertices)?;
    let witness = augment_with_set(&decompose_forest(&rest)?, &incidence, &constraint_vertices)?;
    let dual = AuxWitness {
        name: "dual".into(),
        graph: build_dual(&instance),
        witness: TreeDecomposition::single_bag((0..s).collect()),
        claimed_width_bound: s as i64 - 1,
    };
    Ok(ReductionOutput {
        instance,
        witness,
        claimed_width_bound: binomial2(k) as i64,
        index,
        aux: vec![dual],
        note: None,
        detail: (),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{bf_clique, bf_gensat, check::satisfies};

    #[test]
    fn triangle() {
        let out = clique_to_gensat(&Graph::complete(3), 3).unwrap();
        let rel = &out.instance.relations()[0];
        assert_eq!(rel.arity(), 6);
        let bits = |s: &str| s.chars().map(|c| c == '1').collect::<Vec<_>>();
        let mut expected = vec![bits("100010"), bits("100001"), bits("010001")];
        expected.sort();
        assert_eq!(rel.tuples(), &expected[..]);
        assert_eq!(out.instance.constraints().len(), 3);
        let sol = bf_gensat(&out.instance).unwrap();
        assert!(satisfies(&out.instance, &sol));
        out.check_witnesses().unwrap();
        assert_eq!(out.aux[0].graph.vertex_count(), 3);
    }

    #[test]
    fn path_has_no_triangle() {
        let out = clique_to_gensat(&Graph::path(3), 3).unwrap();
        assert!(bf_gensat(&out.instance).is_none());
        out.check_witnesses().unwrap();
    }

    #[test]
    fn k2_needs_an_edge() {
        for g in [Graph::empty(3), Graph::path(3), Graph::petersen()] {
            let out = clique_to_gensat(&g, 2).unwrap();
            assert_eq!(bf_gensat(&out.instance).is_some(), g.edge_count() > 0);
            assert_eq!(bf_clique(&g, 2).is_some(), g.edge_count() > 0);
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(clique_to_gensat(&Graph::path(3), 1).is_err());
        assert!(clique_to_gensat(&Graph::empty(0), 2).is_err());
    }
}
