//! All graphs on `n` vertices up to isomorphism, for exhaustive sweeps.
//!
//! Canonical forms come from individualization-refinement: refine to an
//! equitable ordered partition, branch on the first non-singleton cell and
//! keep the largest adjacency code over all leaves. Twins inside a cell are
//! interchangeable, so one representative per twin class is branched on.

use std::collections::HashSet;

use crate::graph::{Graph, GraphBuilder};

/// Largest `n` whose upper-triangle code fits the 64-bit key.
pub const MAX_CANONICAL_N: usize = 11;

/// Canonical 64-bit key: two graphs get the same key iff they are
/// isomorphic. Only for `n <= MAX_CANONICAL_N`.
pub fn canonical_key(g: &Graph) -> u64 {
    assert!(
        g.n() <= MAX_CANONICAL_N,
        "canonical keys need n <= {MAX_CANONICAL_N}"
    );
    let n = g.n();
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |acc, &w| acc | 1 << w))
        .collect();
    let mut best = None;
    let cells = refine(&adj, vec![(0..n).collect()]);
    search(&adj, cells, &mut best);
    best.unwrap_or(0)
}

/// Graph with the given canonical key on `n` vertices.
pub fn graph_from_key(n: usize, key: u64) -> Graph {
    let mut b = GraphBuilder::new(n);
    let total = n * n.saturating_sub(1) / 2;
    let mut bit = total;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if key >> bit & 1 == 1 {
                b.add_edge(i, j);
            }
        }
    }
    b.build()
}

fn code(adj: &[u16], order: &[usize]) -> u64 {
    let mut c = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            c = c << 1 | (adj[order[i]] >> order[j] & 1) as u64;
        }
    }
    c
}

fn search(adj: &[u16], cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let c = code(adj, &order);
        if best.is_none_or(|b| c > b) {
            *best = Some(c);
        }
        return;
    };
    let cell = &cells[pos];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&u| twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
        next.splice(pos..=pos, [vec![v], rest]);
        search(adj, refine(adj, next), best);
    }
}

fn twins(adj: &[u16], u: usize, v: usize) -> bool {
    let mask = !(1u16 << u | 1u16 << v);
    adj[u] & mask == adj[v] & mask
}

/// Splits cells by neighbor counts into splitter cells until stable. The
/// order of the pieces depends only on the counts, so the result is
/// label-invariant.
fn refine(adj: &[u16], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u16 = cells[s].iter().fold(0, |acc, &v| acc | 1 << v);
            let mut out = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    out.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((adj[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_by_key(|&(c, _)| c);
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        out.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if out.len() != cells.len() {
                changed = true;
                cells = out;
            }
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

/// One representative per isomorphism class of graphs on `n` vertices.
///
/// Grown vertex by vertex: every graph arises from a smaller one by adding
/// a vertex of minimum degree, so only such extensions are kept.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    all_graph_keys(n)
        .into_iter()
        .map(|k| graph_from_key(n, k))
        .collect()
}

/// Canonical keys of all graphs on `n` vertices, sorted.
pub fn all_graph_keys(n: usize) -> Vec<u64> {
    assert!(n <= MAX_CANONICAL_N);
    let mut level: Vec<u64> = vec![0];
    for m in 1..n {
        let mut seen = HashSet::new();
        for &key in &level {
            let parent = graph_from_key(m, key);
            let degs: Vec<usize> = (0..m).map(|v| parent.degree(v)).collect();
            for nbrs in 0u32..1 << m {
                let d = nbrs.count_ones() as usize;
                let ok = (0..m).all(|v| degs[v] + (nbrs >> v & 1) as usize >= d);
                if !ok {
                    continue;
                }
                let mut b = GraphBuilder::new(m + 1);
                for (u, v) in parent.edges() {
                    b.add_edge(u, v);
                }
                for v in 0..m {
                    if nbrs >> v & 1 == 1 {
                        b.add_edge(v, m);
                    }
                }
                seen.insert(canonical_key(&b.build()));
            }
        }
        level = seen.into_iter().collect();
    }
    level.sort_unstable();
    level
}
