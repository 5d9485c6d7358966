//! Simple undirected graphs on dense vertex ids and the elementary
//! predicates every other module builds on.

pub(crate) mod bipartite;
mod blocks;
mod connectivity;
mod cycles;
pub mod dimacs;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bipartite::{is_bipartite, Bipartition};
pub use blocks::{blocks, Block};
pub use connectivity::{local_connectivity, min_vertex_separator, vertex_connectivity};
pub use cycles::{find_odd_cycle, find_odd_s_cycle, Cycle};

/// Largest vertex count handled by the bitmask-based exact searches.
pub const MASK_LIMIT: usize = 128;

pub type Mask = u128;

/// Finite simple undirected graph on the vertices `0..n`.
///
/// Immutable after construction. Neighbor lists are sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    masks: Vec<Mask>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        let mut b = GraphBuilder::new(n);
        for (u, v) in seen {
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            b.add_edge(i, (i + 1) % n);
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 1..n {
            b.add_edge(i - 1, i);
        }
        b.build()
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = GraphBuilder::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g.build()
    }

    fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        let masks = if n <= MASK_LIMIT {
            adj.iter()
                .map(|list| list.iter().fold(0, |acc, &v| acc | (1 << v)))
                .collect()
        } else {
            Vec::new()
        };
        Graph {
            adj,
            masks,
            m: m / 2,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if !self.masks.is_empty() {
            return self.masks[u] >> v & 1 == 1;
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighborhood as a bitmask. Only valid when `n <= MASK_LIMIT`.
    #[inline]
    pub fn nbr_mask(&self, v: usize) -> Mask {
        self.masks[v]
    }

    pub fn fits_mask(&self) -> bool {
        self.n() <= MASK_LIMIT
    }

    pub(crate) fn full_mask(&self) -> Mask {
        if self.n() == MASK_LIMIT {
            Mask::MAX
        } else {
            (1 << self.n()) - 1
        }
    }

    /// Vertices reachable from `from` through `allowed` (`from` included).
    pub(crate) fn reach(&self, from: usize, allowed: Mask) -> Mask {
        let mut seen: Mask = 1 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next: Mask = 0;
            for v in mask_iter(frontier) {
                next |= self.masks[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    pub(crate) fn require_mask(&self) -> Result<()> {
        if self.fits_mask() {
            Ok(())
        } else {
            Err(Error::TooLarge {
                n: self.n(),
                limit: MASK_LIMIT,
            })
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Same vertex ids, with every edge incident to `removed` deleted.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if gone[u] {
                    Vec::new()
                } else {
                    list.iter().copied().filter(|&v| !gone[v]).collect()
                }
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        Graph::from_adjacency(adj)
    }

    /// Subgraph induced by `vertices` (relabelled `0..len` in the given
    /// order) together with the translation back to this graph.
    pub fn induced(&self, vertices: &[usize]) -> SubGraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        SubGraph {
            graph: Graph::from_adjacency(adj),
            to_parent: vertices.to_vec(),
        }
    }

    /// Graph on `n + extra` vertices with additional edges.
    pub fn extended(&self, extra: usize, edges: &[(usize, usize)]) -> Graph {
        let mut b = GraphBuilder::new(self.n() + extra);
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for &(u, v) in edges {
            b.add_edge(u, v);
        }
        b.build()
    }

    /// Connected components, each sorted, ordered by lowest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Incremental construction; duplicate insertions are ignored.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<usize>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Panics on loops or out-of-range ids; callers validate user input
    /// through [`Graph::from_edges`].
    pub fn add_edge(&mut self, u: usize, v: usize) -> &mut Self {
        assert!(u != v, "self-loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self
    }

    pub fn build(&self) -> Graph {
        Graph::from_adjacency(
            self.adj
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        )
    }
}

/// An induced subgraph with its id translation to the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubGraph {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl SubGraph {
    #[inline]
    pub fn lift(&self, v: usize) -> usize {
        self.to_parent[v]
    }

    pub fn lift_all(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.to_parent[v]).collect()
    }
}

/// Sorted set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn from_mask(mask: Mask) -> Self {
        VertexSet(mask_iter(mask).collect())
    }

    pub fn to_mask(&self) -> Mask {
        self.0.iter().fold(0, |acc, &v| acc | (1 << v))
    }

    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut out = vec![false; n];
        for &v in &self.0 {
            out[v] = true;
        }
        out
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::InvalidInput(format!(
                "vertex {v} out of range for {n} vertices"
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        VertexSet::new(a)
    }
}

/// Bits `a` and above.
#[inline]
pub fn mask_from(a: usize) -> Mask {
    if a >= MASK_LIMIT {
        0
    } else {
        Mask::MAX << a
    }
}

/// Iterates the set bits of a mask in increasing order.
#[inline]
pub fn mask_iter(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}
