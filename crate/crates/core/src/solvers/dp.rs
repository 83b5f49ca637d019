use indexmap::map::Entry;
use indexmap::IndexMap;

use super::SolverError;
use crate::graph::{Graph, Orientation, Vertex};
use crate::problems::{ChosenOutdegreeInstance, Color, ListColoringInstance, MinMaxOutdegreeInstance};
use crate::treewidth::{NiceKind, NiceTreeDecomposition};

/// One value per bag vertex, aligned with the node's sorted bag.
type State = Vec<u64>;

#[derive(Debug, Clone)]
enum Back {
    Leaf,
    Child(State),
    Edge(State, bool),
    Pair(State, State),
}

/// Reachable states of one node, in discovery order, each with the first
/// child state(s) that produced it.
type Table = IndexMap<State, Back>;

/// Problem-specific transitions; the traversal and witness recovery are shared.
trait Transitions {
    /// Values a freshly introduced vertex may take.
    fn introduce(&self, v: Vertex) -> Vec<u64>;
    /// Successors of `state` once edge `edge_id` between bag positions `pu`
    /// and `pv` is introduced, each tagged with the orientation it encodes.
    fn edge(&self, state: &[u64], bag: &[Vertex], pu: usize, pv: usize, edge_id: usize) -> Vec<(State, bool)>;
    fn join(&self, bag: &[Vertex], left: &Table, right: &Table) -> Vec<(State, Back)>;
    /// Called after each node's table is complete.
    fn check_table(&self, _bag: &[Vertex], _table: &Table) {}
}

/// Table sizes observed during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub nodes: usize,
    pub max_table: usize,
    pub total_states: usize,
}

struct Solution {
    values: Vec<Option<u64>>,
    forward: Vec<Option<bool>>,
}

fn check_fits(ntd: &NiceTreeDecomposition, g: &Graph) -> Result<(), SolverError> {
    ntd.check_shape(g).map_err(SolverError::BadDecomposition)?;
    ntd.to_tree_decomposition().validate(g)?;
    Ok(())
}

fn run<T: Transitions>(t: &T, g: &Graph, ntd: &NiceTreeDecomposition) -> (Option<Solution>, DpStats) {
    let nodes = ntd.nodes();
    let mut tables: Vec<Table> = Vec::with_capacity(nodes.len());
    let mut stats = DpStats::default();
    for node in nodes {
        let bag = &node.bag;
        let mut table = Table::new();
        match node.kind {
            NiceKind::Leaf => {
                table.insert(Vec::new(), Back::Leaf);
            }
            NiceKind::Introduce(v) => {
                let pos = bag.binary_search(&v).expect("introduced vertex in bag");
                let values = t.introduce(v);
                for s in tables[node.children[0]].keys() {
                    for &x in &values {
                        let mut next = s.clone();
                        next.insert(pos, x);
                        table.entry(next).or_insert_with(|| Back::Child(s.clone()));
                    }
                }
            }
            NiceKind::Forget(v) => {
                let child_bag = &nodes[node.children[0]].bag;
                let pos = child_bag.binary_search(&v).expect("forgotten vertex in child bag");
                for s in tables[node.children[0]].keys() {
                    let mut next = s.clone();
                    next.remove(pos);
                    if let Entry::Vacant(slot) = table.entry(next) {
                        slot.insert(Back::Child(s.clone()));
                    }
                }
            }
            NiceKind::IntroduceEdge(u, v) => {
                let pu = bag.binary_search(&u).expect("edge endpoint in bag");
                let pv = bag.binary_search(&v).expect("edge endpoint in bag");
                let id = g.edge_id(u, v).expect("introduced edge exists");
                for s in tables[node.children[0]].keys() {
                    for (next, fwd) in t.edge(s, bag, pu, pv, id) {
                        table.entry(next).or_insert_with(|| Back::Edge(s.clone(), fwd));
                    }
                }
            }
            NiceKind::Join => {
                let (l, r) = (&tables[node.children[0]], &tables[node.children[1]]);
                for (s, back) in t.join(bag, l, r) {
                    table.entry(s).or_insert(back);
                }
            }
        }
        t.check_table(bag, &table);
        stats.nodes += 1;
        stats.max_table = stats.max_table.max(table.len());
        stats.total_states += table.len();
        tables.push(table);
    }

    let root = ntd.root();
    let Some((root_state, _)) = tables[root].first() else {
        return (None, stats);
    };
    let mut sol = Solution {
        values: vec![None; g.vertex_count()],
        forward: vec![None; g.edge_count()],
    };
    let mut stack = vec![(root, root_state.clone())];
    while let Some((i, state)) = stack.pop() {
        let node = &nodes[i];
        let back = tables[i].get(&state).expect("state recorded in its table");
        match (node.kind, back) {
            (NiceKind::Leaf, _) => {}
            (NiceKind::Introduce(v), Back::Child(prev)) => {
                let pos = node.bag.binary_search(&v).expect("in bag");
                sol.values[v] = Some(state[pos]);
                stack.push((node.children[0], prev.clone()));
            }
            (NiceKind::Forget(_), Back::Child(prev)) => stack.push((node.children[0], prev.clone())),
            (NiceKind::IntroduceEdge(u, v), Back::Edge(prev, fwd)) => {
                sol.forward[g.edge_id(u, v).expect("edge")] = Some(*fwd);
                stack.push((node.children[0], prev.clone()));
            }
            (NiceKind::Join, Back::Pair(a, b)) => {
                stack.push((node.children[0], a.clone()));
                stack.push((node.children[1], b.clone()));
            }
            (kind, back) => unreachable!("back-pointer {back:?} at {kind:?}"),
        }
    }
    (Some(sol), stats)
}

struct ListColoringRules<'a> {
    inst: &'a ListColoringInstance,
}

impl Transitions for ListColoringRules<'_> {
    fn introduce(&self, v: Vertex) -> Vec<u64> {
        self.inst.list(v).iter().map(|&c| u64::from(c)).collect()
    }

    fn edge(&self, state: &[u64], _bag: &[Vertex], pu: usize, pv: usize, _id: usize) -> Vec<(State, bool)> {
        if state[pu] == state[pv] {
            Vec::new()
        } else {
            vec![(state.to_vec(), true)]
        }
    }

    fn join(&self, _bag: &[Vertex], left: &Table, right: &Table) -> Vec<(State, Back)> {
        left.keys()
            .filter(|s| right.contains_key(*s))
            .map(|s| (s.clone(), Back::Pair(s.clone(), s.clone())))
            .collect()
    }
}

/// List coloring over a nice decomposition. Introduce branches on the list,
/// introduce-edge drops equal endpoint colors, forget projects, join keeps
/// states present in both children.
pub fn dp_list_coloring(
    inst: &ListColoringInstance,
    ntd: &NiceTreeDecomposition,
) -> Result<Option<Vec<Color>>, SolverError> {
    dp_list_coloring_with_stats(inst, ntd).map(|(c, _)| c)
}

pub fn dp_list_coloring_with_stats(
    inst: &ListColoringInstance,
    ntd: &NiceTreeDecomposition,
) -> Result<(Option<Vec<Color>>, DpStats), SolverError> {
    check_fits(ntd, inst.graph())?;
    let (sol, stats) = run(&ListColoringRules { inst }, inst.graph(), ntd);
    let coloring = sol.map(|s| {
        s.values
            .into_iter()
            .map(|c| c.expect("every vertex is introduced") as Color)
            .collect()
    });
    Ok((coloring, stats))
}

struct OutdegreeRules<'a> {
    inst: &'a ChosenOutdegreeInstance,
}

impl Transitions for OutdegreeRules<'_> {
    fn introduce(&self, _v: Vertex) -> Vec<u64> {
        vec![0]
    }

    fn edge(&self, state: &[u64], bag: &[Vertex], pu: usize, pv: usize, id: usize) -> Vec<(State, bool)> {
        let w = self.inst.weights().weight(id);
        let rho = self.inst.rho();
        let mut out = Vec::with_capacity(2);
        for (pos, fwd) in [(pu, true), (pv, false)] {
            let acc = state[pos] + w;
            if acc <= rho[bag[pos]] {
                let mut next = state.to_vec();
                next[pos] = acc;
                out.push((next, fwd));
            }
        }
        out
    }

    fn join(&self, bag: &[Vertex], left: &Table, right: &Table) -> Vec<(State, Back)> {
        let rho = self.inst.rho();
        let mut out = Vec::new();
        for a in left.keys() {
            'pair: for b in right.keys() {
                let mut sum = Vec::with_capacity(a.len());
                for (i, (x, y)) in a.iter().zip(b).enumerate() {
                    if x + y > rho[bag[i]] {
                        continue 'pair;
                    }
                    sum.push(x + y);
                }
                out.push((sum, Back::Pair(a.clone(), b.clone())));
            }
        }
        out
    }

    fn check_table(&self, bag: &[Vertex], table: &Table) {
        let rho = self.inst.rho();
        let bound = bag
            .iter()
            .fold(1u128, |p, &v| p.saturating_mul(u128::from(rho[v]) + 1));
        assert!(table.len() as u128 <= bound, "outdegree table exceeds its state bound");
        assert!(table.keys().all(|s| s.iter().zip(bag).all(|(&a, &v)| a <= rho[v])));
    }
}

/// Chosen maximum outdegree over a nice decomposition. Each bag vertex
/// carries its outgoing weight so far; introduce-edge branches on the
/// direction, join adds accumulators, and anything above `rho` is dropped
/// as soon as it appears.
pub fn dp_chosen_outdegree(
    inst: &ChosenOutdegreeInstance,
    ntd: &NiceTreeDecomposition,
) -> Result<Option<Orientation>, SolverError> {
    dp_chosen_outdegree_with_stats(inst, ntd).map(|(o, _)| o)
}

pub fn dp_chosen_outdegree_with_stats(
    inst: &ChosenOutdegreeInstance,
    ntd: &NiceTreeDecomposition,
) -> Result<(Option<Orientation>, DpStats), SolverError> {
    check_fits(ntd, inst.graph())?;
    let (sol, stats) = run(&OutdegreeRules { inst }, inst.graph(), ntd);
    let lam = sol.map(|s| {
        let forward = s.forward.into_iter().map(|f| f.expect("every edge is introduced")).collect();
        Orientation::new(inst.graph(), forward).expect("one direction per edge")
    });
    Ok((lam, stats))
}

/// The decision version with `rho ≡ r`.
pub fn min_max_outdegree(
    inst: &MinMaxOutdegreeInstance,
    ntd: &NiceTreeDecomposition,
) -> Result<Option<Orientation>, SolverError> {
    dp_chosen_outdegree(&inst.as_chosen(), ntd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeWeighting;
    use crate::problems::check;
    use crate::treewidth::{heuristic_decomposition, to_nice, Heuristic, TreeDecomposition};

    fn nice(g: &Graph) -> NiceTreeDecomposition {
        to_nice(&heuristic_decomposition(g, Heuristic::MinFill, 0), g).unwrap()
    }

    #[test]
    fn list_coloring_examples() {
        let p = ListColoringInstance::new(Graph::path(3), vec![vec![1], vec![1, 2], vec![1]]).unwrap();
        let col = dp_list_coloring(&p, &nice(p.graph())).unwrap().unwrap();
        assert!(check::is_list_coloring(&p, &col));
        let tri = ListColoringInstance::new(Graph::complete(3), vec![vec![1, 2]; 3]).unwrap();
        assert_eq!(dp_list_coloring(&tri, &nice(tri.graph())).unwrap(), None);
        let empty = ListColoringInstance::new(Graph::empty(2), vec![vec![1], vec![]]).unwrap();
        assert_eq!(dp_list_coloring(&empty, &nice(empty.graph())).unwrap(), None);
    }

    #[test]
    fn outdegree_examples() {
        let g = Graph::complete(2);
        let w = EdgeWeighting::new(&g, vec![1]).unwrap();
        let yes = ChosenOutdegreeInstance::new(g.clone(), w.clone(), vec![1, 0]).unwrap();
        let lam = dp_chosen_outdegree(&yes, &nice(&g)).unwrap().unwrap();
        assert!(check::is_admissible(&yes, &lam));
        let no = ChosenOutdegreeInstance::new(g.clone(), w, vec![0, 0]).unwrap();
        assert_eq!(dp_chosen_outdegree(&no, &nice(&g)).unwrap(), None);
    }

    #[test]
    fn min_max_examples() {
        let tri = Graph::complete(3);
        let w = EdgeWeighting::uniform(&tri, 1).unwrap();
        let one = MinMaxOutdegreeInstance::new(tri.clone(), w.clone(), 1).unwrap();
        assert!(min_max_outdegree(&one, &nice(&tri)).unwrap().is_some());
        // r = 0 is not a valid instance; ask the chosen form directly
        let zero = ChosenOutdegreeInstance::new(tri.clone(), w, vec![0; 3]).unwrap();
        assert!(dp_chosen_outdegree(&zero, &nice(&tri)).unwrap().is_none());
    }

    #[test]
    fn rejects_decomposition_of_another_graph() {
        let p = ListColoringInstance::new(Graph::path(3), vec![vec![1]; 3]).unwrap();
        let wrong = to_nice(&TreeDecomposition::single_bag(vec![0, 1]), &Graph::complete(2)).unwrap();
        assert!(matches!(dp_list_coloring(&p, &wrong), Err(SolverError::BadDecomposition(_))));
    }

    #[test]
    fn outdegree_tables_stay_within_bound() {
        let g = Graph::complete(4);
        let w = EdgeWeighting::new(&g, vec![1, 2, 3, 1, 2, 3]).unwrap();
        let inst = ChosenOutdegreeInstance::new(g.clone(), w, vec![3, 3, 4, 2]).unwrap();
        let (lam, stats) = dp_chosen_outdegree_with_stats(&inst, &nice(&g)).unwrap();
        assert_eq!(lam.is_some(), crate::problems::bf_chosen_outdegree(&inst).is_some());
        assert!(stats.max_table <= 4 * 4 * 5 * 3);
    }
}
