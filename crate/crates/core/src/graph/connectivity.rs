//! Vertex connectivity through unit-capacity max-flow on the split graph
//! (every vertex `v` becomes an arc `v_in -> v_out` of capacity one).

use std::collections::VecDeque;

use super::{Graph, VertexSet};

const INF: u32 = u32::MAX / 2;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    orig: u32,
}

/// Residual network with adjacency lists of arc indices. Arc `i ^ 1` is the
/// reverse of arc `i`.
#[derive(Debug, Clone)]
pub(crate) struct FlowNet {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNet {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, orig: cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            orig: 0,
        });
    }

    /// Augments along shortest paths until `limit` units flow or no
    /// augmenting path remains.
    pub(crate) fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        let nodes = self.out.len();
        let mut pred = vec![usize::MAX; nodes];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && arc.to != source && pred[arc.to] == usize::MAX {
                        pred[arc.to] = a;
                        if arc.to == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = sink;
            while v != source {
                let a = pred[v];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                v = self.arcs[a ^ 1].to;
            }
            flow += 1;
        }
        flow
    }

    /// Nodes reachable from `source` in the residual network.
    pub(crate) fn residual_reach(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }

    /// Splits the current flow into source-sink node sequences.
    pub(crate) fn decompose(&mut self, source: usize, sink: usize) -> Vec<Vec<usize>> {
        let mut used: Vec<u32> = self
            .arcs
            .iter()
            .map(|a| a.orig.saturating_sub(a.cap))
            .collect();
        let mut paths = Vec::new();
        loop {
            let mut path = vec![source];
            let mut arcs_taken: Vec<usize> = Vec::new();
            let mut u = source;
            while u != sink {
                let next = self.out[u]
                    .iter()
                    .copied()
                    .find(|&a| a % 2 == 0 && used[a] > 0);
                let Some(a) = next else { break };
                let to = self.arcs[a].to;
                if let Some(pos) = path.iter().position(|&x| x == to) {
                    // drop a circulation
                    for &b in &arcs_taken[pos..] {
                        used[b] -= 1;
                    }
                    used[a] -= 1;
                    path.truncate(pos + 1);
                    arcs_taken.truncate(pos);
                    u = to;
                    continue;
                }
                arcs_taken.push(a);
                path.push(to);
                u = to;
            }
            if u != sink {
                break;
            }
            for &a in &arcs_taken {
                used[a] -= 1;
            }
            paths.push(path);
        }
        paths
    }
}

#[inline]
fn v_in(v: usize) -> usize {
    2 * v
}

#[inline]
fn v_out(v: usize) -> usize {
    2 * v + 1
}

fn split_network(g: &Graph, s: usize, t: usize) -> FlowNet {
    let mut net = FlowNet::new(2 * g.n());
    for v in 0..g.n() {
        let cap = if v == s || v == t { INF } else { 1 };
        net.add_arc(v_in(v), v_out(v), cap);
    }
    for (u, v) in g.edges() {
        if (u == s && v == t) || (u == t && v == s) {
            continue;
        }
        net.add_arc(v_out(u), v_in(v), INF);
        net.add_arc(v_out(v), v_in(u), INF);
    }
    net
}

/// Maximum number of internally disjoint `s`-`t` paths, capped at `limit`.
/// An edge `st` counts as one path.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    assert!(s != t);
    let direct = usize::from(g.has_edge(s, t));
    let mut net = split_network(g, s, t);
    direct + net.max_flow(v_out(s), v_in(t), limit.saturating_sub(direct))
}

/// Vertex connectivity: the least number of vertices whose removal
/// disconnects `g` or leaves a single vertex. Complete graphs give `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    separator_search(g).0
}

/// A minimum vertex separator, or `None` when `g` is complete (or has at
/// most one vertex) and no separator exists.
pub fn min_vertex_separator(g: &Graph) -> Option<VertexSet> {
    separator_search(g).1
}

fn separator_search(g: &Graph) -> (usize, Option<VertexSet>) {
    let n = g.n();
    if n <= 1 {
        return (0, None);
    }
    let comps = g.components();
    if comps.len() > 1 {
        return (0, Some(VertexSet::default()));
    }
    let mut best = n - 1;
    let mut best_pair = None;
    // Even's scheme: some v_i with i <= kappa lies outside a minimum
    // separator, and every vertex separated from it has a larger index.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let mut net = split_network(g, i, j);
            let k = net.max_flow(v_out(i), v_in(j), best);
            if k < best {
                best = k;
                best_pair = Some((i, j));
            }
        }
        i += 1;
    }
    let Some((s, t)) = best_pair else {
        return (n - 1, None);
    };
    let mut net = split_network(g, s, t);
    net.max_flow(v_out(s), v_in(t), usize::MAX);
    let reach = net.residual_reach(v_out(s));
    let sep = (0..n)
        .filter(|&v| v != s && v != t && reach[v_in(v)] && !reach[v_out(v)])
        .collect::<VertexSet>();
    debug_assert_eq!(sep.len(), best);
    (best, Some(sep))
}

/// Vertex-disjoint paths from `source` to distinct vertices of `targets`,
/// each meeting `targets` only in its last vertex. `source` must not be a
/// target. Returns at most `want` paths.
pub(crate) fn fan_to_set(
    g: &Graph,
    source: usize,
    targets: &[bool],
    want: usize,
) -> Vec<Vec<usize>> {
    let n = g.n();
    let sink = 2 * n;
    let mut net = FlowNet::new(2 * n + 1);
    for v in 0..n {
        let cap = if v == source { INF } else { 1 };
        net.add_arc(v_in(v), v_out(v), cap);
        if targets[v] {
            net.add_arc(v_out(v), sink, 1);
        }
    }
    for (u, v) in g.edges() {
        if !targets[u] {
            net.add_arc(v_out(u), v_in(v), INF);
        }
        if !targets[v] {
            net.add_arc(v_out(v), v_in(u), INF);
        }
    }
    net.max_flow(v_out(source), sink, want);
    net.decompose(v_out(source), sink)
        .into_iter()
        .map(|nodes| {
            let mut verts = vec![source];
            for &x in &nodes[1..nodes.len() - 1] {
                if x % 2 == 0 {
                    verts.push(x / 2);
                }
            }
            verts
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(vertex_connectivity(&Graph::complete(5)), 4);
        assert_eq!(vertex_connectivity(&Graph::cycle(6)), 2);
        assert_eq!(vertex_connectivity(&Graph::path(4)), 1);
        assert_eq!(vertex_connectivity(&Graph::empty(3)), 0);
        assert_eq!(vertex_connectivity(&Graph::complete_bipartite(3, 4)), 3);
    }

    #[test]
    fn separator_disconnects() {
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
            ],
        )
        .unwrap();
        let sep = min_vertex_separator(&g).unwrap();
        assert_eq!(sep.len(), 1);
        let rest = g.without_vertices(sep.as_slice());
        let alive: Vec<usize> = (0..7).filter(|&v| !sep.contains(v)).collect();
        assert!(!rest.induced(&alive).graph.is_connected());
    }

    #[test]
    fn complete_graph_has_no_separator() {
        assert!(min_vertex_separator(&Graph::complete(4)).is_none());
    }

    #[test]
    fn fan_paths_are_disjoint() {
        let g = Graph::complete_bipartite(3, 3);
        let mut targets = vec![false; 6];
        targets[4] = true;
        targets[5] = true;
        let paths = fan_to_set(&g, 0, &targets, 2);
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert_eq!(p[0], 0);
            assert!(targets[*p.last().unwrap()]);
            for w in p.windows(2) {
                assert!(g.has_edge(w[0], w[1]));
            }
        }
        assert_ne!(paths[0].last(), paths[1].last());
    }
}
