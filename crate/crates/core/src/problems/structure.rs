use super::GensatInstance;
use crate::graph::Graph;

/// Variables adjacent when they occur together in some constraint.
pub fn build_primal(inst: &GensatInstance) -> Graph {
    let mut edges = Vec::new();
    for c in inst.constraints() {
        for (a, &x) in c.scope.iter().enumerate() {
            for &y in &c.scope[a + 1..] {
                edges.push((x.min(y), x.max(y)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(inst.variable_count(), edges).expect("scopes hold distinct known variables")
}

/// Constraints adjacent when their scopes share a variable.
pub fn build_dual(inst: &GensatInstance) -> Graph {
    let cs = inst.constraints();
    let mut edges = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i].scope.iter().any(|x| cs[j].scope.contains(x)) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(cs.len(), edges).expect("pairs are distinct")
}

/// Bipartite variable–constraint graph: variables keep their indices and
/// constraint `i` becomes vertex `variable_count + i`.
pub fn build_incidence(inst: &GensatInstance) -> Graph {
    let nv = inst.variable_count();
    let edges = inst
        .constraints()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.scope.iter().map(move |&x| (x, nv + i)));
    Graph::new(nv + inst.constraints().len(), edges).expect("scopes hold distinct variables")
}
