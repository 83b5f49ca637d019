//! Exact exponential-time solvers. Every one returns the first witness in a
//! fixed search order, so answers are reproducible:
//!
//! * colorings: vertices in reverse smallest-last (degeneracy) order for list
//!   coloring, index order otherwise; colors ascending;
//! * edge subsets: edges in canonical order, "leave out" tried before "take";
//! * assignments: variables in index order, `false` before `true`;
//! * orientations: edges in canonical order, `u -> v` (`u < v`) before `v -> u`;
//! * cliques: transversals / vertex sets in lexicographic order.

use super::{
    check, ChosenOutdegreeInstance, Color, EquitableColoringInstance, GeneralFactorInstance, GensatInstance,
    ListColoringInstance, MinMaxOutdegreeInstance, PrecoloringExtensionInstance,
};
use crate::graph::{EdgeWeighting, Graph, Orientation, PartitionedGraph, Vertex};

/// Smallest-last order reversed: the vertex removed last (densest core)
/// comes first. Ties go to the lowest index.
pub fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
        seq.push(v);
    }
    seq.reverse();
    seq
}

fn color_search(g: &Graph, order: &[Vertex], domains: &[Vec<Color>]) -> Option<Vec<Color>> {
    fn rec(g: &Graph, order: &[Vertex], domains: &[Vec<Color>], i: usize, col: &mut [Color]) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for &c in &domains[v] {
            if g.neighbors(v).iter().all(|&u| col[u] != c) {
                col[v] = c;
                if rec(g, order, domains, i + 1, col) {
                    return true;
                }
            }
        }
        col[v] = 0;
        false
    }
    let mut col = vec![0; g.vertex_count()];
    rec(g, order, domains, 0, &mut col).then_some(col)
}

pub fn bf_list_coloring(inst: &ListColoringInstance) -> Option<Vec<Color>> {
    if inst.lists().iter().any(Vec::is_empty) {
        return None;
    }
    let order = degeneracy_order(inst.graph());
    let col = color_search(inst.graph(), &order, inst.lists())?;
    debug_assert!(check::is_list_coloring(inst, &col));
    Some(col)
}

pub fn bf_precoloring(inst: &PrecoloringExtensionInstance) -> Option<Vec<Color>> {
    let g = inst.graph();
    let domains: Vec<Vec<Color>> = inst
        .precolor()
        .iter()
        .map(|p| match p {
            Some(c) => vec![*c],
            None => (1..=inst.r()).collect(),
        })
        .collect();
    // precolored vertices first so conflicts surface early
    let mut order: Vec<Vertex> = g.vertices().filter(|&v| inst.precolor()[v].is_some()).collect();
    order.extend(g.vertices().filter(|&v| inst.precolor()[v].is_none()));
    let col = color_search(g, &order, &domains)?;
    debug_assert!(check::is_precoloring_extension(inst, &col));
    Some(col)
}

pub fn bf_equitable(inst: &EquitableColoringInstance) -> Option<Vec<Color>> {
    struct Search<'a> {
        g: &'a Graph,
        r: usize,
        lo: usize,
        hi: usize,
        sizes: Vec<usize>,
        col: Vec<Color>,
    }
    impl Search<'_> {
        fn rec(&mut self, v: Vertex) -> bool {
            let n = self.g.vertex_count();
            let deficit: usize = self.sizes.iter().map(|&s| self.lo.saturating_sub(s)).sum();
            if deficit > n - v {
                return false;
            }
            if v == n {
                return true;
            }
            for c in 0..self.r {
                let color = c as Color + 1;
                if self.sizes[c] < self.hi && self.g.neighbors(v).iter().all(|&u| u >= v || self.col[u] != color) {
                    self.sizes[c] += 1;
                    self.col[v] = color;
                    if self.rec(v + 1) {
                        return true;
                    }
                    self.sizes[c] -= 1;
                }
            }
            self.col[v] = 0;
            false
        }
    }
    let n = inst.graph().vertex_count();
    let r = inst.r() as usize;
    let mut s = Search {
        g: inst.graph(),
        r,
        lo: n / r,
        hi: n.div_ceil(r),
        sizes: vec![0; r],
        col: vec![0; n],
    };
    if !s.rec(0) {
        return None;
    }
    debug_assert!(check::is_equitable_coloring(inst, &s.col));
    Some(s.col)
}

/// Returns the chosen edge ids, ascending.
pub fn bf_general_factor(inst: &GeneralFactorInstance) -> Option<Vec<usize>> {
    struct Search<'a> {
        inst: &'a GeneralFactorInstance,
        deg: Vec<usize>,
        left: Vec<usize>,
        taken: Vec<bool>,
    }
    impl Search<'_> {
        fn viable(&self, v: Vertex) -> bool {
            let (d, l) = (self.deg[v], self.left[v]);
            self.inst.cardinality_set(v).iter().any(|&k| d <= k && k <= d + l)
        }
        fn rec(&mut self, e: usize) -> bool {
            let g = self.inst.graph();
            if e == g.edge_count() {
                return true;
            }
            let (u, v) = g.edges()[e];
            self.left[u] -= 1;
            self.left[v] -= 1;
            for take in [false, true] {
                if take {
                    self.deg[u] += 1;
                    self.deg[v] += 1;
                }
                self.taken[e] = take;
                if self.viable(u) && self.viable(v) && self.rec(e + 1) {
                    return true;
                }
                if take {
                    self.deg[u] -= 1;
                    self.deg[v] -= 1;
                }
            }
            self.taken[e] = false;
            self.left[u] += 1;
            self.left[v] += 1;
            false
        }
    }
    let g = inst.graph();
    let mut s = Search {
        inst,
        deg: vec![0; g.vertex_count()],
        left: g.vertices().map(|v| g.degree(v)).collect(),
        taken: vec![false; g.edge_count()],
    };
    if !g.vertices().all(|v| s.viable(v)) || !s.rec(0) {
        return None;
    }
    let f: Vec<usize> = (0..g.edge_count()).filter(|&e| s.taken[e]).collect();
    debug_assert!(check::is_general_factor(inst, &f));
    Some(f)
}

pub fn bf_gensat(inst: &GensatInstance) -> Option<Vec<bool>> {
    let n = inst.variable_count();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in inst.constraints().iter().enumerate() {
        if inst.relation_of(c).tuples().is_empty() {
            return None;
        }
        for &x in &c.scope {
            touching[x].push(i);
        }
    }
    // `assigned[x]` is None while x is open; a constraint survives while some
    // tuple agrees with every assigned scope variable.
    fn consistent(inst: &GensatInstance, ci: usize, assigned: &[Option<bool>]) -> bool {
        let c = &inst.constraints()[ci];
        inst.relation_of(c).tuples().iter().any(|t| {
            c.scope
                .iter()
                .zip(t)
                .all(|(&x, &b)| assigned[x].is_none_or(|a| a == b))
        })
    }
    fn rec(inst: &GensatInstance, touching: &[Vec<usize>], x: usize, assigned: &mut [Option<bool>]) -> bool {
        if x == assigned.len() {
            return true;
        }
        for b in [false, true] {
            assigned[x] = Some(b);
            if touching[x].iter().all(|&ci| consistent(inst, ci, assigned)) && rec(inst, touching, x + 1, assigned) {
                return true;
            }
        }
        assigned[x] = None;
        false
    }
    let mut assigned = vec![None; n];
    if !rec(inst, &touching, 0, &mut assigned) {
        return None;
    }
    let tau: Vec<bool> = assigned.into_iter().map(|a| a.expect("all assigned")).collect();
    debug_assert!(check::satisfies(inst, &tau));
    Some(tau)
}

const UNDECIDED: u8 = 0;
const FORWARD: u8 = 1;
const BACKWARD: u8 = 2;

/// Depth-first orientation search with capacity propagation.
struct OrientationSearch<'a> {
    g: &'a Graph,
    w: &'a EdgeWeighting,
    residual: Vec<u64>,
    state: Vec<u8>,
    trail: Vec<usize>,
    slack: u64,
    open_weight: u64,
}

impl<'a> OrientationSearch<'a> {
    fn new(g: &'a Graph, w: &'a EdgeWeighting, rho: &[u64]) -> Self {
        OrientationSearch {
            g,
            w,
            residual: rho.to_vec(),
            state: vec![UNDECIDED; g.edge_count()],
            trail: Vec::new(),
            slack: rho.iter().sum(),
            open_weight: w.total_weight(),
        }
    }

    fn assign(&mut self, e: usize, dir: u8) {
        let (u, v) = self.g.edges()[e];
        let tail = if dir == FORWARD { u } else { v };
        let wt = self.w.weight(e);
        self.residual[tail] -= wt;
        self.slack -= wt;
        self.open_weight -= wt;
        self.state[e] = dir;
        self.trail.push(e);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("non-empty trail");
            let (u, v) = self.g.edges()[e];
            let tail = if self.state[e] == FORWARD { u } else { v };
            let wt = self.w.weight(e);
            self.residual[tail] += wt;
            self.slack += wt;
            self.open_weight += wt;
            self.state[e] = UNDECIDED;
        }
    }

    /// Forces every open edge that only one endpoint can still emit. Returns
    /// false on an edge neither endpoint can emit, or when the total residual
    /// capacity cannot cover the open weight.
    fn propagate(&mut self, mut queue: Vec<Vertex>) -> bool {
        while let Some(x) = queue.pop() {
            for e in self.g.incident_edges(x).collect::<Vec<_>>() {
                if self.state[e] != UNDECIDED {
                    continue;
                }
                let (u, v) = self.g.edges()[e];
                let wt = self.w.weight(e);
                match (self.residual[u] >= wt, self.residual[v] >= wt) {
                    (false, false) => return false,
                    (true, false) => {
                        self.assign(e, FORWARD);
                        queue.push(u);
                    }
                    (false, true) => {
                        self.assign(e, BACKWARD);
                        queue.push(v);
                    }
                    (true, true) => {}
                }
            }
        }
        self.slack >= self.open_weight
    }

    fn rec(&mut self, from: usize) -> bool {
        let Some(e) = (from..self.g.edge_count()).find(|&e| self.state[e] == UNDECIDED) else {
            return true;
        };
        let (u, v) = self.g.edges()[e];
        let wt = self.w.weight(e);
        for (dir, tail) in [(FORWARD, u), (BACKWARD, v)] {
            if self.residual[tail] < wt {
                continue;
            }
            let mark = self.trail.len();
            self.assign(e, dir);
            if self.propagate(vec![tail]) && self.rec(e + 1) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }

    fn solve(mut self) -> Option<Orientation> {
        let all: Vec<Vertex> = self.g.vertices().collect();
        if !self.propagate(all) || !self.rec(0) {
            return None;
        }
        let forward = self.state.iter().map(|&s| s == FORWARD).collect();
        Some(Orientation::new(self.g, forward).expect("one direction per edge"))
    }
}

pub fn bf_chosen_outdegree(inst: &ChosenOutdegreeInstance) -> Option<Orientation> {
    let lam = OrientationSearch::new(inst.graph(), inst.weights(), inst.rho()).solve()?;
    debug_assert!(check::is_admissible(inst, &lam));
    Some(lam)
}

/// Unpruned enumeration of all `2^|E|` orientations in the oracle order;
/// the reference the propagating search is tested against.
pub fn enumerate_chosen_outdegree(inst: &ChosenOutdegreeInstance) -> Option<Orientation> {
    let g = inst.graph();
    let m = g.edge_count();
    assert!(m < 32, "enumeration is limited to fewer than 32 edges");
    (0u64..1 << m).find_map(|mask| {
        // bit (m-1-e) set means edge e points backward, so counting up
        // visits orientations in the same order as the search
        let forward = (0..m).map(|e| mask >> (m - 1 - e) & 1 == 0).collect();
        let lam = Orientation::new(g, forward).expect("one bit per edge");
        check::is_admissible(inst, &lam).then_some(lam)
    })
}

pub fn bf_min_max_outdegree(inst: &MinMaxOutdegreeInstance) -> Option<Orientation> {
    bf_chosen_outdegree(&inst.as_chosen())
}

/// Least `r` admitting an orientation with every weighted outdegree at most
/// `r`, by binary search over `[0, total_weight]`.
pub fn bf_min_max_value(g: &Graph, w: &EdgeWeighting) -> u64 {
    let feasible = |r: u64| {
        let rho = vec![r; g.vertex_count()];
        OrientationSearch::new(g, w, &rho).solve().is_some()
    };
    let (mut lo, mut hi) = (0, w.total_weight());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// One vertex per part, pairwise adjacent; transversals in lexicographic
/// order of within-part positions.
pub fn bf_partitioned_clique(pg: &PartitionedGraph) -> Option<Vec<Vertex>> {
    fn rec(pg: &PartitionedGraph, i: usize, pick: &mut Vec<Vertex>) -> bool {
        if i == pg.k() {
            return true;
        }
        for &v in &pg.parts()[i] {
            if pick.iter().all(|&u| pg.graph().has_edge(u, v)) {
                pick.push(v);
                if rec(pg, i + 1, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    let mut pick = Vec::with_capacity(pg.k());
    rec(pg, 0, &mut pick).then_some(pick)
}

/// A clique on `k` vertices, if any; sets in lexicographic order.
pub fn bf_clique(g: &Graph, k: usize) -> Option<Vec<Vertex>> {
    fn rec(g: &Graph, k: usize, start: Vertex, pick: &mut Vec<Vertex>) -> bool {
        if pick.len() == k {
            return true;
        }
        for v in start..g.vertex_count() {
            if pick.iter().all(|&u| g.has_edge(u, v)) {
                pick.push(v);
                if rec(g, k, v + 1, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    let mut pick = Vec::with_capacity(k);
    rec(g, k, 0, &mut pick).then_some(pick)
}
