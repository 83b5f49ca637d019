use std::collections::BTreeMap;

use super::{binomial2, GadgetIndex, ReductionError, ReductionOutput, Role};
use crate::graph::{weighted_outdegree, EdgeWeighting, Graph, Orientation, PartitionedGraph, Vertex};
use crate::problems::check::is_admissible;
use crate::problems::ChosenOutdegreeInstance;
use crate::treewidth::{augment_with_set, decompose_forest, TreeDecomposition};

/// Size constants of the clique gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetParameters {
    pub k: usize,
    pub n: usize,
    /// `n + 1`
    pub big_n: u64,
    /// `k (N^3 + N^2)`
    pub big_m: u64,
}

impl GadgetParameters {
    pub fn new(k: usize, n: usize) -> Self {
        let big_n = n as u64 + 1;
        GadgetParameters {
            k,
            n,
            big_n,
            big_m: k as u64 * (big_n.pow(3) + big_n.pow(2)),
        }
    }

    fn cube(&self) -> u64 {
        self.big_n.pow(3)
    }

    /// Special edge from `x_i^j` to the `b` of a pair; `lower` says whether
    /// `i` is the smaller part of the pair. `j` is 1-based.
    pub fn xb(&self, j: usize, lower: bool) -> u64 {
        self.cube() + if lower { j as u64 } else { j as u64 * self.big_n }
    }

    /// Special edge from `y_i^j` to the `c` of a pair.
    pub fn yc(&self, j: usize, lower: bool) -> u64 {
        self.xb(j, lower) + 1
    }
}

/// Vertex ids of a built gadget. Indices here are 0-based; the role tags in
/// the output index are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub params: GadgetParameters,
    pub source: PartitionedGraph,
    /// `E_{i,i'}` for `i < i'`: pairs `(q, q')` of 0-based positions whose
    /// source vertices are adjacent.
    pub cross: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    pub a: Vec<Vertex>,
    pub u: Vec<Vec<Vertex>>,
    pub x: Vec<Vec<Vertex>>,
    pub y: Vec<Vec<Vertex>>,
    pub b: BTreeMap<(usize, usize), Vertex>,
    pub c: BTreeMap<(usize, usize), Vertex>,
    pub d: BTreeMap<(usize, usize), Vertex>,
    pub e: BTreeMap<(usize, usize, usize, usize), Vertex>,
}

impl GadgetLayout {
    /// The `b` and `c` vertices.
    pub fn bc(&self) -> Vec<Vertex> {
        self.b.values().chain(self.c.values()).copied().collect()
    }
}

type Output = ReductionOutput<ChosenOutdegreeInstance, Option<GadgetLayout>>;

/// Partitioned clique to chosen maximum outdegree.
///
/// Vertices are numbered `a`, `d`, `u`, `x`, `y`, `e`, `b`, `c` (each group
/// in lexicographic index order), which puts the selection edges first in
/// the canonical edge order.
///
/// When some pair of parts has no edge between them the answer is no, and
/// the output is the canonical no-instance: `K2`, unit weight, `ρ ≡ 0`.
pub fn pc_to_chosen_outdegree(pg: &PartitionedGraph) -> Result<Output, ReductionError> {
    let (k, n) = (pg.k(), pg.n());
    if n == 0 {
        return Err(ReductionError::Input("parts are empty".into()));
    }
    let params = GadgetParameters::new(k, n);
    let g = pg.graph();
    let mut cross = BTreeMap::new();
    for i in 0..k {
        for ip in i + 1..k {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|q| (0..n).map(move |qp| (q, qp)))
                .filter(|&(q, qp)| g.has_edge(pg.vertex(i, q), pg.vertex(ip, qp)))
                .collect();
            if pairs.is_empty() {
                return Ok(canonical_no(k, i, ip));
            }
            cross.insert((i, ip), pairs);
        }
    }

    let mut index = GadgetIndex::new();
    let mut next = 0;
    let mut fresh = |role: Role| {
        index.insert(next, role);
        next += 1;
        next - 1
    };
    let a: Vec<Vertex> = (0..k).map(|i| fresh(Role::A { i: i + 1 })).collect();
    let mut d = BTreeMap::new();
    for &(i, ip) in cross.keys() {
        d.insert((i, ip), fresh(Role::D { i: i + 1, ip: ip + 1 }));
    }
    let mut group = |make: fn(usize, usize) -> Role| -> Vec<Vec<Vertex>> {
        (0..k).map(|i| (0..n).map(|j| fresh(make(i + 1, j + 1))).collect()).collect()
    };
    let u = group(|i, j| Role::U { i, j });
    let x = group(|i, j| Role::X { i, j });
    let y = group(|i, j| Role::Y { i, j });
    let mut e = BTreeMap::new();
    for (&(i, ip), pairs) in &cross {
        for &(q, qp) in pairs {
            let role = Role::E { i: i + 1, ip: ip + 1, q: q + 1, qp: qp + 1 };
            e.insert((i, ip, q, qp), fresh(role));
        }
    }
    let mut b = BTreeMap::new();
    for &(i, ip) in cross.keys() {
        b.insert((i, ip), fresh(Role::B { i: i + 1, ip: ip + 1 }));
    }
    let mut c = BTreeMap::new();
    for &(i, ip) in cross.keys() {
        c.insert((i, ip), fresh(Role::C { i: i + 1, ip: ip + 1 }));
    }
    let vertex_count = next;

    let big_m = params.big_m;
    let mut triples: Vec<(Vertex, Vertex, u64)> = Vec::new();
    let mut rho = vec![0u64; vertex_count];
    for i in 0..k {
        rho[a[i]] = 1;
        for j in 0..n {
            triples.push((a[i], u[i][j], 1));
            triples.push((u[i][j], x[i][j], big_m));
            triples.push((u[i][j], y[i][j], big_m + 1));
            rho[u[i][j]] = big_m + 1;
            rho[x[i][j]] = big_m;
            rho[y[i][j]] = big_m + 1;
        }
    }
    for (&(i, ip), pairs) in &cross {
        let (bv, cv, dv) = (b[&(i, ip)], c[&(i, ip)], d[&(i, ip)]);
        for j in 0..n {
            triples.push((x[i][j], bv, params.xb(j + 1, true)));
            triples.push((x[ip][j], bv, params.xb(j + 1, false)));
            triples.push((y[i][j], cv, params.yc(j + 1, true)));
            triples.push((y[ip][j], cv, params.yc(j + 1, false)));
            rho[cv] += params.yc(j + 1, true) + params.yc(j + 1, false);
        }
        rho[dv] = pairs.len() as u64 - 1;
        for &(q, qp) in pairs {
            let ev = e[&(i, ip, q, qp)];
            let eb = params.xb(q + 1, true) + params.xb(qp + 1, false);
            let ec = params.yc(q + 1, true) + params.yc(qp + 1, false);
            triples.push((dv, ev, 1));
            triples.push((ev, bv, eb));
            triples.push((ev, cv, ec));
            rho[ev] = ec;
            rho[bv] += eb;
        }
    }

    let h = Graph::new(vertex_count, triples.iter().map(|&(s, t, _)| (s, t)))?;
    let weights = EdgeWeighting::from_triples(&h, triples.iter().copied())?;
    let layout = GadgetLayout {
        params,
        source: pg.clone(),
        cross,
        a,
        u,
        x,
        y,
        b,
        c,
        d,
        e,
    };
    check_arithmetic(&h, &weights, &rho, &layout)?;

    let bc = layout.bc();
    let (rest, _) = h.remove_vertices(&bc)?;
    let witness = augment_with_set(&decompose_forest(&rest)?, &h, &bc)?;
    Ok(ReductionOutput {
        instance: ChosenOutdegreeInstance::new(h, weights, rho)?,
        witness,
        claimed_width_bound: 2 * binomial2(k) as i64 + 1,
        index,
        aux: Vec::new(),
        note: None,
        detail: Some(layout),
    })
}

fn canonical_no(k: usize, i: usize, ip: usize) -> Output {
    let g = Graph::complete(2);
    let w = EdgeWeighting::uniform(&g, 1).expect("one edge");
    let mut index = GadgetIndex::new();
    index.insert(0, Role::Canonical { k: 1 });
    index.insert(1, Role::Canonical { k: 2 });
    ReductionOutput {
        instance: ChosenOutdegreeInstance::new(g, w, vec![0, 0]).expect("valid"),
        witness: TreeDecomposition::single_bag(vec![0, 1]),
        claimed_width_bound: 2 * binomial2(k) as i64 + 1,
        index,
        aux: Vec::new(),
        note: Some(format!(
            "no edge between parts {} and {}: canonical infeasible instance",
            i + 1,
            ip + 1
        )),
        detail: None,
    }
}

fn check_arithmetic(h: &Graph, w: &EdgeWeighting, rho: &[u64], l: &GadgetLayout) -> Result<(), ReductionError> {
    let fail = |msg: String| Err(ReductionError::Arithmetic(msg));
    let p = l.params;
    let (k, n) = (p.k, p.n);
    let s: usize = l.cross.values().map(Vec::len).sum();
    let pairs = binomial2(k);
    if h.vertex_count() != k * (3 * n + 1) + 3 * pairs + s {
        return fail(format!("vertex count {}", h.vertex_count()));
    }
    if h.edge_count() != 3 * k * n + 3 * s + 4 * n * pairs {
        return fail(format!("edge count {}", h.edge_count()));
    }
    let cube = p.cube();
    let bc = l.bc();
    // weight of special edges (those touching b or c) at v
    let special = |v: Vertex| -> u64 {
        h.neighbors(v)
            .iter()
            .filter(|t| bc.contains(t))
            .map(|&t| w.weight(h.edge_id(v, t).unwrap()))
            .sum()
    };
    for i in 0..k {
        for j in 0..n {
            let (mx, my) = (special(l.x[i][j]), special(l.y[i][j]));
            if !(mx < my && my < p.big_m) {
                return fail(format!("M(x) = {mx}, M(y) = {my}, M = {}", p.big_m));
            }
        }
    }
    for &v in &bc {
        for &t in h.neighbors(v) {
            let wt = w.weight(h.edge_id(v, t).unwrap());
            if wt <= cube {
                return fail(format!("special weight {wt} <= N^3"));
            }
        }
    }
    for (&(i, ip), &cv) in &l.c {
        if rho[cv] / cube != 2 * n as u64 {
            return fail(format!("rho(c) = {} at pair ({i}, {ip})", rho[cv]));
        }
        for &(q, qp) in &l.cross[&(i, ip)] {
            let ev = l.e[&(i, ip, q, qp)];
            let ec = w.weight(h.edge_id(ev, cv).unwrap());
            let eb = w.weight(h.edge_id(ev, l.b[&(i, ip)]).unwrap());
            if ec <= 2 * cube || ec != eb + 2 || rho[ev] < eb + 2 {
                return fail(format!("e weights {eb}/{ec}, rho(e) = {}", rho[ev]));
            }
        }
    }
    Ok(())
}

fn layout(out: &Output) -> Result<&GadgetLayout, ReductionError> {
    out.detail.as_ref().ok_or(ReductionError::NoLayout)
}

/// Recovers a clique from a ρ-admissible orientation of the gadget: part
/// `i` contributes the vertex at the position `j` whose edge `a_i u_i^j`
/// leaves `a_i`, or its first vertex if `a_i` has no outgoing edge. The
/// result is checked to be a clique of the source graph.
pub fn extract_clique(out: &Output, lam: &Orientation) -> Result<Vec<Vertex>, ReductionError> {
    let inst = &out.instance;
    let h = inst.graph();
    if lam.len() != h.edge_count() || !is_admissible(inst, lam) {
        return Err(ReductionError::NotAdmissible);
    }
    let l = layout(out)?;
    let mut clique = Vec::with_capacity(l.params.k);
    for (i, &ai) in l.a.iter().enumerate() {
        let j = (0..l.params.n)
            .find(|&j| lam.tail(h, h.edge_id(ai, l.u[i][j]).unwrap()) == ai)
            .unwrap_or(0);
        clique.push(l.source.vertex(i, j));
    }
    if !l.source.graph().is_clique(&clique)? {
        return Err(ReductionError::NotAClique(clique));
    }
    Ok(clique)
}

/// Builds the orientation that selects a given transversal clique
/// (`clique[i]` from part `i`).
///
/// On the selected column `j = p(i)`: `a → u`, `u → y`, `x → u`, `y → c`,
/// `b → x`. Every other column is reversed. For each pair the `e` of the
/// selected cross edge sends to `d` and `b` and receives from `c`; the
/// others receive from `d` and `b` and send to `c`.
pub fn clique_orientation(out: &Output, clique: &[Vertex]) -> Result<Orientation, ReductionError> {
    let l = layout(out)?;
    let h = out.instance.graph();
    if clique.len() != l.params.k {
        return Err(ReductionError::Input(format!("expected {} vertices", l.params.k)));
    }
    let mut p = Vec::with_capacity(clique.len());
    for (i, &v) in clique.iter().enumerate() {
        match l.source.parts()[i].iter().position(|&w| w == v) {
            Some(j) => p.push(j),
            None => return Err(ReductionError::Input(format!("vertex {v} is not in part {}", i + 1))),
        }
    }
    let mut lam = Orientation::new(h, vec![true; h.edge_count()])?;
    let mut arc = |s: Vertex, t: Vertex| lam.orient(h, s, t);
    for i in 0..l.params.k {
        for j in 0..l.params.n {
            let (a, u, x, y) = (l.a[i], l.u[i][j], l.x[i][j], l.y[i][j]);
            if j == p[i] {
                arc(a, u)?;
                arc(u, y)?;
                arc(x, u)?;
            } else {
                arc(u, a)?;
                arc(y, u)?;
                arc(u, x)?;
            }
        }
    }
    for (&(i, ip), pairs) in &l.cross {
        let (b, c, d) = (l.b[&(i, ip)], l.c[&(i, ip)], l.d[&(i, ip)]);
        for (side, part) in [(i, p[i]), (ip, p[ip])] {
            for j in 0..l.params.n {
                let (x, y) = (l.x[side][j], l.y[side][j]);
                if j == part {
                    arc(y, c)?;
                    arc(b, x)?;
                } else {
                    arc(c, y)?;
                    arc(x, b)?;
                }
            }
        }
        for &(q, qp) in pairs {
            let ev = l.e[&(i, ip, q, qp)];
            if (q, qp) == (p[i], p[ip]) {
                arc(ev, d)?;
                arc(ev, b)?;
                arc(c, ev)?;
            } else {
                arc(d, ev)?;
                arc(b, ev)?;
                arc(ev, c)?;
            }
        }
    }
    Ok(lam)
}

/// Outdegree of each gadget vertex under `lam`, for diagnostics.
pub fn outdegree_report(out: &Output, lam: &Orientation) -> Vec<(Role, u64, u64)> {
    let inst = &out.instance;
    inst.graph()
        .vertices()
        .map(|v| {
            let role = out.index.role(v).expect("every vertex has a role");
            (role, weighted_outdegree(inst.graph(), inst.weights(), lam, v), inst.rho()[v])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{bf_chosen_outdegree, bf_partitioned_clique};

    fn pg(n: usize, edges: &[(usize, usize)], parts: Vec<Vec<usize>>) -> PartitionedGraph {
        PartitionedGraph::new(Graph::new(n, edges.iter().copied()).unwrap(), parts).unwrap()
    }

    #[test]
    fn smallest_gadget_constants() {
        let out = pc_to_chosen_outdegree(&pg(2, &[(0, 1)], vec![vec![0], vec![1]])).unwrap();
        let l = out.detail.as_ref().unwrap();
        assert_eq!((l.params.big_n, l.params.big_m), (2, 24));
        let inst = &out.instance;
        let h = inst.graph();
        assert_eq!((h.vertex_count(), h.edge_count()), (12, 13));
        let wt = |s, t| inst.weights().weight(h.edge_id(s, t).unwrap());
        let (b, c, e) = (l.b[&(0, 1)], l.c[&(0, 1)], l.e[&(0, 1, 0, 0)]);
        assert_eq!((wt(l.x[0][0], b), wt(l.x[1][0], b)), (9, 10));
        assert_eq!((wt(l.y[0][0], c), wt(l.y[1][0], c)), (10, 11));
        assert_eq!((wt(e, b), wt(e, c)), (19, 21));
        assert_eq!((inst.rho()[b], inst.rho()[c], inst.rho()[e], inst.rho()[l.d[&(0, 1)]]), (19, 21, 21, 0));
        let lam = bf_chosen_outdegree(inst).unwrap();
        assert_eq!(extract_clique(&out, &lam).unwrap(), vec![0, 1]);
        out.check_witnesses().unwrap();
    }

    #[test]
    fn missing_pair_short_circuits() {
        let out = pc_to_chosen_outdegree(&pg(2, &[], vec![vec![0], vec![1]])).unwrap();
        assert!(out.detail.is_none());
        assert!(out.note.is_some());
        assert!(bf_chosen_outdegree(&out.instance).is_none());
        out.check_witnesses().unwrap();
    }

    #[test]
    fn constructive_orientation_is_admissible() {
        // parts {0,1,2}, {3,4,5}, {6,7,8}; clique 1-4-8 plus noise
        let edges = [(1, 4), (1, 8), (4, 8), (0, 3), (2, 6), (5, 7), (0, 7)];
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let out = pc_to_chosen_outdegree(&pg(9, &edges, parts)).unwrap();
        let lam = clique_orientation(&out, &[1, 4, 8]).unwrap();
        let bad: Vec<_> = outdegree_report(&out, &lam).into_iter().filter(|(_, o, r)| o > r).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(extract_clique(&out, &lam).unwrap(), vec![1, 4, 8]);
        out.check_witnesses().unwrap();
        assert!(out.witness_width() <= 7);
    }

    #[test]
    fn two_by_two_sweep() {
        // every graph between two parts of size 2
        let cross = [(0, 2), (0, 3), (1, 2), (1, 3)];
        for mask in 0u32..16 {
            let edges: Vec<_> = (0..4).filter(|b| mask >> b & 1 == 1).map(|b| cross[b]).collect();
            let p = pg(4, &edges, vec![vec![0, 1], vec![2, 3]]);
            let out = pc_to_chosen_outdegree(&p).unwrap();
            let lam = bf_chosen_outdegree(&out.instance);
            assert_eq!(lam.is_some(), bf_partitioned_clique(&p).is_some(), "mask {mask}");
            if let Some(lam) = lam {
                let set = extract_clique(&out, &lam).unwrap();
                assert!(p.graph().is_clique(&set).unwrap());
            }
        }
    }
}
