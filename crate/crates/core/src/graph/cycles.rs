use serde::{Deserialize, Serialize};

use super::connectivity::fan_to_set;
use super::{blocks, Graph, VertexSet};
use crate::error::{Error, Result};

/// A cycle given as its cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Validates distinctness, length and adjacency against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "cycle of length {} is too short",
                vertices.len()
            )));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(Error::InvalidInput("cycle repeats a vertex".into()));
        }
        if sorted.last().is_some_and(|&v| v >= g.n()) {
            return Err(Error::InvalidInput("cycle vertex out of range".into()));
        }
        let l = vertices.len();
        for i in 0..l {
            let (u, v) = (vertices[i], vertices[(i + 1) % l]);
            if !g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("cycle uses non-edge {u}-{v}")));
            }
        }
        Ok(Cycle { vertices })
    }

    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Self {
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    pub fn meets(&self, s: &VertexSet) -> bool {
        self.vertices.iter().any(|&v| s.contains(v))
    }

    /// Re-checks the cycle against `g` and that it is an odd `s`-cycle.
    pub fn is_odd_s_cycle_in(&self, g: &Graph, s: &VertexSet) -> bool {
        Cycle::new(g, self.vertices.clone()).is_ok() && self.is_odd() && self.meets(s)
    }
}

/// Some odd cycle of `g`, if any.
pub fn find_odd_cycle(g: &Graph) -> Option<Cycle> {
    let n = g.n();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if depth[w] == depth[u] {
                    return Some(close_at_lca(u, w, &parent));
                }
            }
        }
    }
    None
}

/// Joins the tree paths from `u` and `w` (same BFS depth) at their lowest
/// common ancestor.
fn close_at_lca(u: usize, w: usize, parent: &[usize]) -> Cycle {
    let mut left = vec![u];
    let mut right = vec![w];
    let (mut a, mut b) = (u, w);
    while parent[a] != parent[b] {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    left.push(parent[a]);
    left.extend(right.into_iter().rev());
    Cycle::new_unchecked(left)
}

/// Some odd cycle through a vertex of `s`, if one exists.
///
/// Every vertex of a non-bipartite 2-connected graph lies on an odd cycle,
/// so it suffices to look at non-bipartite blocks meeting `s`: take any odd
/// cycle of the block and, if it misses the chosen terminal, route two
/// disjoint paths from the terminal onto it and close through the arc of
/// the right parity.
pub fn find_odd_s_cycle(g: &Graph, s: &VertexSet) -> Option<Cycle> {
    if s.is_empty() {
        return None;
    }
    for block in blocks(g) {
        if block.graph.n() < 3 {
            continue;
        }
        let Some(local_v) = block.to_parent.iter().position(|&v| s.contains(v)) else {
            continue;
        };
        let Some(odd) = find_odd_cycle(&block.graph) else {
            continue;
        };
        let cycle = through_vertex(&block.graph, local_v, &odd);
        debug_assert!(Cycle::new(&block.graph, cycle.clone()).is_ok());
        let lifted = Cycle::new_unchecked(block.lift_all(&cycle));
        debug_assert!(lifted.is_odd_s_cycle_in(g, s));
        return Some(lifted);
    }
    None
}

fn through_vertex(block: &Graph, v: usize, odd: &Cycle) -> Vec<usize> {
    let cyc = odd.vertices();
    if cyc.contains(&v) {
        return cyc.to_vec();
    }
    let l = cyc.len();
    let mut on_cycle = vec![false; block.n()];
    let mut pos = vec![usize::MAX; block.n()];
    for (i, &c) in cyc.iter().enumerate() {
        on_cycle[c] = true;
        pos[c] = i;
    }
    let fan = fan_to_set(block, v, &on_cycle, 2);
    assert_eq!(fan.len(), 2, "blocks are 2-connected");
    let (p1, p2) = (&fan[0], &fan[1]);
    let (a, b) = (*p1.last().unwrap(), *p2.last().unwrap());
    let fwd = (pos[b] + l - pos[a]) % l;
    let tails = (p1.len() - 1) + (p2.len() - 1);
    // forward arc a -> b has fwd edges, the backward one l - fwd
    let use_forward = (tails + fwd) % 2 == 1;
    let mut out = p1.clone();
    if use_forward {
        for step in 1..fwd {
            out.push(cyc[(pos[a] + step) % l]);
        }
    } else {
        for step in 1..l - fwd {
            out.push(cyc[(pos[a] + l - step) % l]);
        }
    }
    out.extend(p2.iter().rev().take(p2.len() - 1));
    out
}
