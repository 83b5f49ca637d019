use super::SolverError;
use crate::graph::{EdgeWeighting, Graph, Orientation};

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Residual network with capacity-scaling augmenting paths.
#[derive(Debug, Clone)]
pub struct MaxFlow {
    arcs: Vec<Vec<Arc>>,
}

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        MaxFlow {
            arcs: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from -> to` with capacity `cap`; returns its position in
    /// `from`'s arc list.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let fwd = self.arcs[from].len();
        let back = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, cap, rev: back });
        self.arcs[to].push(Arc { to: from, cap: 0, rev: fwd });
        fwd
    }

    /// Residual capacity of arc `idx` leaving `from`.
    pub fn residual(&self, from: usize, idx: usize) -> u64 {
        self.arcs[from][idx].cap
    }

    /// Maximum `source`-`sink` flow. Phases use a threshold `delta`, halved
    /// down to 1, and augment only along paths whose residual capacities are
    /// all at least `delta`.
    pub fn run(&mut self, source: usize, sink: usize) -> u64 {
        let max_cap = self.arcs.iter().flatten().map(|a| a.cap).max().unwrap_or(0);
        if max_cap == 0 || source == sink {
            return 0;
        }
        let mut delta = 1u64 << (63 - max_cap.leading_zeros());
        let mut total = 0;
        while delta > 0 {
            loop {
                let mut seen = vec![false; self.arcs.len()];
                let pushed = self.augment(source, sink, u64::MAX, delta, &mut seen);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
            delta /= 2;
        }
        total
    }

    fn augment(&mut self, v: usize, sink: usize, limit: u64, delta: u64, seen: &mut [bool]) -> u64 {
        if v == sink {
            return limit;
        }
        seen[v] = true;
        for i in 0..self.arcs[v].len() {
            let Arc { to, cap, rev } = self.arcs[v][i];
            if cap >= delta && !seen[to] {
                let got = self.augment(to, sink, limit.min(cap), delta, seen);
                if got > 0 {
                    self.arcs[v][i].cap -= got;
                    self.arcs[to][rev].cap += got;
                    return got;
                }
            }
        }
        0
    }
}

struct OrientationNetwork {
    flow: MaxFlow,
    source: usize,
    sink: usize,
    /// Arc index from each edge node toward its smaller endpoint.
    to_first: Vec<usize>,
}

/// Source feeds each edge node one unit; an edge node passes it to either
/// endpoint; each vertex node passes at most `d` units to the sink. A unit
/// reaching vertex `v` means the edge points away from `v`.
fn network(g: &Graph, d: u64) -> OrientationNetwork {
    let m = g.edge_count();
    let source = 0;
    let edge_node = |e: usize| 1 + e;
    let vertex_node = |v: usize| 1 + m + v;
    let sink = 1 + m + g.vertex_count();
    let mut flow = MaxFlow::new(sink + 1);
    let mut to_first = Vec::with_capacity(m);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        flow.add_arc(source, edge_node(e), 1);
        to_first.push(flow.add_arc(edge_node(e), vertex_node(u), 1));
        flow.add_arc(edge_node(e), vertex_node(v), 1);
    }
    for v in g.vertices() {
        flow.add_arc(vertex_node(v), sink, d);
    }
    OrientationNetwork {
        flow,
        source,
        sink,
        to_first,
    }
}

/// An orientation with every (unweighted) outdegree at most `d`, if one exists.
pub fn flow_orientation(g: &Graph, d: u64) -> Option<Orientation> {
    let mut net = network(g, d);
    if net.flow.run(net.source, net.sink) < g.edge_count() as u64 {
        return None;
    }
    let forward = (0..g.edge_count())
        .map(|e| net.flow.residual(1 + e, net.to_first[e]) == 0)
        .collect();
    Some(Orientation::new(g, forward).expect("one direction per edge"))
}

/// Least maximum outdegree over all orientations, unit weights. Binary
/// search between the average-degree bound `ceil(|E| / |V|)` and `Δ`.
pub fn flow_min_max_unit(g: &Graph) -> u64 {
    if g.edge_count() == 0 {
        return 0;
    }
    let m = g.edge_count() as u64;
    let (mut lo, mut hi) = (m.div_ceil(g.vertex_count() as u64), g.max_degree() as u64);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if flow_orientation(g, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Least maximum weighted outdegree when all edges weigh the same `c`:
/// `c` times the unit-weight optimum.
pub fn flow_min_max_uniform(g: &Graph, w: &EdgeWeighting) -> Result<u64, SolverError> {
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let c = w.is_uniform().ok_or(SolverError::NonUniform)?;
    Ok(c * flow_min_max_unit(g))
}
