use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{is_bipartite, Graph, Mask, VertexSet};

pub type Edge = (usize, usize);

/// Pairwise disjoint edges, optionally indexed by terminal-pair number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<Edge>,
    /// pair index -> position in `edges`
    #[serde(skip_serializing_if = "Option::is_none", default)]
    indexing: Option<BTreeMap<usize, usize>>,
}

fn normalize((u, v): Edge) -> Edge {
    (u.min(v), u.max(v))
}

impl Matching {
    pub fn empty() -> Self {
        Matching {
            edges: Vec::new(),
            indexing: None,
        }
    }

    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(normalize).collect();
        edges.sort_unstable();
        check_disjoint(&edges)?;
        Ok(Matching {
            edges,
            indexing: None,
        })
    }

    /// Matching whose edge for pair `i` is `by_pair[i]`.
    pub fn indexed(by_pair: BTreeMap<usize, Edge>) -> Result<Self> {
        let mut edges = Vec::with_capacity(by_pair.len());
        let mut indexing = BTreeMap::new();
        for (i, e) in by_pair {
            indexing.insert(i, edges.len());
            edges.push(normalize(e));
        }
        check_disjoint(&edges)?;
        Ok(Matching {
            edges,
            indexing: Some(indexing),
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_indexed(&self) -> bool {
        self.indexing.is_some()
    }

    pub fn edge_for(&self, pair: usize) -> Option<Edge> {
        let pos = *self.indexing.as_ref()?.get(&pair)?;
        Some(self.edges[pos])
    }

    /// `(pair, edge)` entries of an indexed matching.
    pub fn indexed_edges(&self) -> Vec<(usize, Edge)> {
        match &self.indexing {
            Some(ix) => ix.iter().map(|(&i, &p)| (i, self.edges[p])).collect(),
            None => Vec::new(),
        }
    }

    pub fn covered(&self) -> VertexSet {
        VertexSet::new(self.edges.iter().flat_map(|&(u, v)| [u, v]))
    }

    pub fn is_matching_in(&self, g: &Graph) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| u < g.n() && v < g.n() && g.has_edge(u, v))
    }
}

fn check_disjoint(edges: &[Edge]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for &(u, v) in edges {
        if u == v {
            return Err(Error::InvalidInput(format!(
                "matching edge {u}-{v} is a loop"
            )));
        }
        if !seen.insert(u) || !seen.insert(v) {
            return Err(Error::InvalidInput(format!(
                "matching edges share a vertex at {u}-{v}"
            )));
        }
    }
    Ok(())
}

/// Maximum matching of a bipartite graph (Hopcroft–Karp). Its size equals
/// τ(g) by König's theorem.
pub fn konig_matching(g: &Graph) -> Result<Matching> {
    let sides = is_bipartite(g)
        .ok_or_else(|| Error::Precondition("König matching needs a bipartite graph".into()))?;
    let left: Vec<usize> = sides.first.iter().collect();
    let n = g.n();
    const FREE: usize = usize::MAX;
    let mut mate = vec![FREE; n];
    let mut dist = vec![0usize; n];

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        let mut found = false;
        for &u in &left {
            if mate[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let next = mate[w];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[u] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for &u in &left {
            if mate[u] == FREE && augment(g, u, &mut mate, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    Matching::new(
        left.iter()
            .filter(|&&u| mate[u] != FREE)
            .map(|&u| (u, mate[u])),
    )
}

fn augment(g: &Graph, u: usize, mate: &mut [usize], dist: &mut [usize]) -> bool {
    for &w in g.neighbors(u) {
        let next = mate[w];
        if next == usize::MAX || (dist[next] == dist[u] + 1 && augment(g, next, mate, dist)) {
            mate[u] = w;
            mate[w] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Greedy maximal matching over edges in lexicographic order, with the set
/// of matched vertices (a vertex cover of size `2|M|`).
pub fn maximal_matching_cover_bound(g: &Graph) -> (Matching, VertexSet) {
    let mut used = vec![false; g.n()];
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            edges.push((u, v));
        }
    }
    let m = Matching::new(edges).expect("greedy edges are disjoint");
    let cover = m.covered();
    (m, cover)
}

/// Size of a maximum matching by exhaustive branching; desk scale only.
pub fn max_matching_size(g: &Graph, budget: &Budget) -> Result<usize> {
    g.require_mask()?;
    let mut meter = budget.meter();
    let mut best = 0;
    let all = super::vertex_cover::all_vertices(g);
    max_matching_branch(g, all, 0, &mut best, &mut meter)?;
    Ok(best)
}

fn max_matching_branch(
    g: &Graph,
    alive: Mask,
    cur: usize,
    best: &mut usize,
    meter: &mut Meter,
) -> Result<()> {
    meter.tick()?;
    *best = (*best).max(cur);
    if cur + alive.count_ones() as usize / 2 <= *best {
        return Ok(());
    }
    // lowest vertex that still has a neighbor
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= !(1 << v);
        let nb = g.nbr_mask(v) & alive;
        if nb == 0 {
            continue;
        }
        for w in crate::graph::mask_iter(nb) {
            max_matching_branch(g, alive & !(1 << v) & !(1 << w), cur + 1, best, meter)?;
        }
        // v stays unmatched
        return max_matching_branch(g, alive & !(1 << v), cur, best, meter);
    }
    Ok(())
}
