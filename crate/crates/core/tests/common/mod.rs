//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the solvers under test beyond `Graph` accessors.
#![allow(dead_code)]

use oddpack::{Graph, GraphBuilder, VertexSet};
use proptest::prelude::*;

/// Graphs on `lo..=hi` vertices with a random edge density.
pub fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graphs_denser_than(lo, hi, 0)
}

/// As [`graphs`], with edge density at least `min` percent.
pub fn graphs_denser_than(lo: usize, hi: usize, min: u8) -> impl Strategy<Value = Graph> {
    (lo..=hi, min..=100).prop_flat_map(|(n, density)| {
        prop::collection::vec(0u8..100, n * n.saturating_sub(1) / 2).prop_map(move |coins| {
            let mut b = GraphBuilder::new(n);
            let mut c = coins.iter();
            for u in 0..n {
                for v in u + 1..n {
                    if *c.next().unwrap() < density {
                        b.add_edge(u, v);
                    }
                }
            }
            b.build()
        })
    })
}

/// Bipartite graphs on `lo..=hi` vertices: random sides, random cross edges.
pub fn bipartite_graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0u8..=100).prop_flat_map(|(n, density)| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(0u8..100, n * n.saturating_sub(1) / 2),
        )
            .prop_map(move |(side, coins)| {
                let mut b = GraphBuilder::new(n);
                let mut c = coins.iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if *c.next().unwrap() < density && side[u] != side[v] {
                            b.add_edge(u, v);
                        }
                    }
                }
                b.build()
            })
    })
}

/// A graph with a random subset of its vertices.
pub fn graph_and_subset(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graphs(lo, hi).prop_flat_map(|g| {
        let n = g.n();
        prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let s: VertexSet = (0..n).filter(|&v| bits[v]).collect();
            (g.clone(), s)
        })
    })
}

pub fn alive_graph(g: &Graph, removed: &[usize]) -> Vec<bool> {
    let mut alive = vec![true; g.n()];
    for &v in removed {
        alive[v] = false;
    }
    alive
}

/// Proper 2-coloring by BFS over `alive` vertices.
pub fn bipartite_alive(g: &Graph, alive: &[bool]) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    for r in 0..g.n() {
        if !alive[r] || color[r] != u8::MAX {
            continue;
        }
        color[r] = 0;
        let mut queue = vec![r];
        while let Some(u) = queue.pop() {
            for &w in g.neighbors(u) {
                if !alive[w] {
                    continue;
                }
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every simple cycle once, as a vertex list starting at its least vertex.
pub fn all_cycles(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    fn extend(
        g: &Graph,
        alive: &[bool],
        start: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if !alive[w] || w < start {
                continue;
            }
            if w == start {
                // each cycle is found in both directions; keep one
                if path.len() >= 3 && path[1] < path[path.len() - 1] {
                    out.push(path.clone());
                }
                continue;
            }
            if on[w] {
                continue;
            }
            on[w] = true;
            path.push(w);
            extend(g, alive, start, path, on, out);
            path.pop();
            on[w] = false;
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    for start in 0..g.n() {
        if !alive[start] {
            continue;
        }
        on[start] = true;
        extend(g, alive, start, &mut vec![start], &mut on, &mut out);
        on[start] = false;
    }
    out
}

/// Is there an odd cycle in `g[alive]` through a vertex of `s`?
pub fn has_odd_s_cycle(g: &Graph, s: &VertexSet, alive: &[bool]) -> bool {
    all_cycles(g, alive)
        .iter()
        .any(|c| c.len() % 2 == 1 && c.iter().any(|&v| s.contains(v)))
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns true.
pub fn any_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in from..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            if rec(n, k, v + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(n, k, 0, &mut Vec::new(), f)
}

/// Smallest `k` such that some `k`-subset satisfies `ok`.
pub fn min_subset(n: usize, ok: &mut dyn FnMut(&[usize]) -> bool) -> usize {
    (0..=n).find(|&k| any_subset(n, k, ok)).unwrap()
}

pub fn brute_oct(g: &Graph) -> usize {
    min_subset(g.n(), &mut |x| bipartite_alive(g, &alive_graph(g, x)))
}

pub fn brute_odd_s_cover(g: &Graph, s: &VertexSet) -> usize {
    min_subset(g.n(), &mut |x| !has_odd_s_cycle(g, s, &alive_graph(g, x)))
}

pub fn brute_tau(g: &Graph) -> usize {
    min_subset(g.n(), &mut |x| {
        g.edges().all(|(u, v)| x.contains(&u) || x.contains(&v))
    })
}

pub fn connected_alive(g: &Graph, alive: &[bool]) -> bool {
    let Some(r) = (0..g.n()).find(|&v| alive[v]) else {
        return true;
    };
    let mut seen = vec![false; g.n()];
    seen[r] = true;
    let mut stack = vec![r];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..g.n()).all(|v| !alive[v] || seen[v])
}

/// Least number of deletions that disconnect `g` or leave one vertex.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    min_subset(n, &mut |x| {
        x.len() + 1 >= n || !connected_alive(g, &alive_graph(g, x))
    })
}

/// Maximum matching size by recursion on the least uncovered edge.
pub fn brute_matching(g: &Graph) -> usize {
    fn rec(edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
        let Some(pos) = edges.iter().position(|&(u, v)| !used[u] && !used[v]) else {
            return 0;
        };
        let (u, v) = edges[pos];
        let rest = &edges[pos + 1..];
        let skip = rec(rest, used);
        used[u] = true;
        used[v] = true;
        let take = 1 + rec(rest, used);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    rec(&edges, &mut vec![false; g.n()])
}

/// Is there a path of odd length between `s` and `t` in `g`?
pub fn has_path_of_parity(g: &Graph, s: usize, t: usize, odd: bool) -> bool {
    fn rec(g: &Graph, v: usize, t: usize, len: usize, odd: bool, on: &mut [bool]) -> bool {
        if v == t {
            return (len % 2 == 1) == odd;
        }
        for &w in g.neighbors(v) {
            if on[w] {
                continue;
            }
            on[w] = true;
            let found = rec(g, w, t, len + 1, odd, on);
            on[w] = false;
            if found {
                return true;
            }
        }
        false
    }
    let mut on = vec![false; g.n()];
    on[s] = true;
    rec(g, s, t, 0, odd, &mut on)
}

/// Is `vs` a path in `g` (distinct, consecutive vertices adjacent)?
pub fn is_path(g: &Graph, vs: &[usize]) -> bool {
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == vs.len() && vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
}
