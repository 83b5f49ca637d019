use std::collections::HashSet;

use super::{TdError, TreeDecomposition};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NiceKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
    /// Edge `{u, v}` with `u < v`; both endpoints are in the bag.
    IntroduceEdge(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first, so a forward
/// scan visits every node after all of its descendants; the root is the last
/// node and has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> i64 {
        self.nodes.iter().map(|n| n.bag.len() as i64).max().unwrap_or(0) - 1
    }

    /// The plain decomposition with the same bags and tree.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(p, n)| n.children.iter().map(move |&c| (c, p)))
            .collect();
        TreeDecomposition::from_edges(bags, &edges).expect("nice tree is simple")
    }

    /// Checks the local shape rules of every node kind and that each edge of
    /// `g` has exactly one introduce-edge node.
    pub fn check_shape(&self, g: &Graph) -> Result<(), String> {
        let mut seen_edges = HashSet::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= i) {
                return Err(format!("node {i} has a child stored after it"));
            }
            let child = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && without(&node.bag, v).as_deref() == Some(child(0).as_slice())
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && without(child(0), v).as_deref() == Some(node.bag.as_slice())
                }
                NiceKind::Join => node.children.len() == 2 && *child(0) == node.bag && *child(1) == node.bag,
                NiceKind::IntroduceEdge(u, v) => {
                    let fresh = seen_edges.insert((u, v));
                    node.children.len() == 1
                        && *child(0) == node.bag
                        && fresh
                        && g.has_edge(u, v)
                        && node.bag.binary_search(&u).is_ok()
                        && node.bag.binary_search(&v).is_ok()
                }
            };
            if !ok {
                return Err(format!("node {i} ({:?}) breaks the nice-form rules", node.kind));
            }
        }
        if seen_edges.len() != g.edge_count() {
            return Err(format!(
                "{} introduce-edge nodes for {} edges",
                seen_edges.len(),
                g.edge_count()
            ));
        }
        if !self.nodes.last().is_some_and(|r| r.bag.is_empty()) {
            return Err("root bag is not empty".into());
        }
        Ok(())
    }
}

fn without(bag: &[Vertex], v: Vertex) -> Option<Vec<Vertex>> {
    let pos = bag.binary_search(&v).ok()?;
    let mut out = bag.to_vec();
    out.remove(pos);
    Some(out)
}

struct Builder<'a> {
    g: &'a Graph,
    td: &'a TreeDecomposition,
    nodes: Vec<NiceNode>,
    introduced: HashSet<(Vertex, Vertex)>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, cur: usize, v: Vertex) -> usize {
        let mut bag = self.nodes[cur].bag.clone();
        let pos = bag.binary_search(&v).unwrap_err();
        bag.insert(pos, v);
        self.push(NiceKind::Introduce(v), bag, vec![cur])
    }

    /// Introduces every pending edge between `v` and the rest of the bag,
    /// then forgets `v`.
    fn forget(&mut self, mut cur: usize, v: Vertex) -> usize {
        let bag = self.nodes[cur].bag.clone();
        for &u in &bag {
            let e = (u.min(v), u.max(v));
            if u != v && self.g.has_edge(u, v) && self.introduced.insert(e) {
                cur = self.push(NiceKind::IntroduceEdge(e.0, e.1), bag.clone(), vec![cur]);
            }
        }
        let rest = without(&bag, v).expect("forgotten vertex is in the bag");
        self.push(NiceKind::Forget(v), rest, vec![cur])
    }

    /// Nice subtree for `t` (rooted away from `parent`) whose top bag equals
    /// the bag of `t`.
    fn build(&mut self, t: usize, parent: Option<usize>) -> usize {
        let bag = self.td.bag(t).to_vec();
        let children: Vec<usize> = self
            .td
            .tree()
            .neighbors(t)
            .iter()
            .copied()
            .filter(|&c| Some(c) != parent)
            .collect();
        if children.is_empty() {
            let mut cur = self.push(NiceKind::Leaf, Vec::new(), Vec::new());
            for &v in &bag {
                cur = self.introduce(cur, v);
            }
            return cur;
        }
        let mut tops = Vec::with_capacity(children.len());
        for c in children {
            let mut cur = self.build(c, Some(t));
            let child_bag = self.td.bag(c).to_vec();
            for &v in child_bag.iter().filter(|v| bag.binary_search(v).is_err()) {
                cur = self.forget(cur, v);
            }
            for &v in bag.iter().filter(|v| child_bag.binary_search(v).is_err()) {
                cur = self.introduce(cur, v);
            }
            tops.push(cur);
        }
        let mut acc = tops[0];
        for &other in &tops[1..] {
            acc = self.push(NiceKind::Join, bag.clone(), vec![acc, other]);
        }
        acc
    }
}

/// Converts a valid decomposition of `g` into nice form, rooted at node 0.
/// Width is preserved, the root bag is empty, and every edge of `g` gets
/// exactly one introduce-edge node, placed just below the forget node of
/// whichever endpoint is forgotten first.
pub fn to_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition, TdError> {
    td.validate(g)?;
    let mut b = Builder {
        g,
        td,
        nodes: Vec::new(),
        introduced: HashSet::new(),
    };
    let mut cur = b.build(0, None);
    for v in td.bag(0).to_vec() {
        cur = b.forget(cur, v);
    }
    debug_assert_eq!(b.introduced.len(), g.edge_count());
    Ok(NiceTreeDecomposition { nodes: b.nodes })
}
