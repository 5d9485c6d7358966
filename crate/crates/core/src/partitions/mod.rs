//! Partitions, nice partitions, the within-parts graph `G[A] ∪ G[B]`, and
//! the vertex cover / matching duality around them.

mod matching;
mod vertex_cover;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::covers::{is_odd_cycle_cover, min_odd_cycle_cover, OddCycleCover};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};

pub use matching::{
    konig_matching, max_matching_size, maximal_matching_cover_bound, Edge, Matching,
};
pub use vertex_cover::{min_vertex_cover, tau};

/// Two disjoint vertex sets covering the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Partition {
    pub fn new(n: usize, a: VertexSet, b: VertexSet) -> Result<Self> {
        a.check_range(n)?;
        b.check_range(n)?;
        if a.len() + b.len() != n || a.iter().any(|v| b.contains(v)) {
            return Err(Error::InvalidInput(
                "partition parts must be disjoint and cover every vertex".into(),
            ));
        }
        Ok(Partition { a, b })
    }

    /// `in_b[v]` tells the side of `v`.
    pub fn from_sides(in_b: &[bool]) -> Self {
        Partition {
            a: (0..in_b.len()).filter(|&v| !in_b[v]).collect(),
            b: (0..in_b.len()).filter(|&v| in_b[v]).collect(),
        }
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.a.contains(v)
    }

    pub fn same_side(&self, u: usize, v: usize) -> bool {
        self.in_a(u) == self.in_a(v)
    }

    pub fn n(&self) -> usize {
        self.a.len() + self.b.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NicePartition {
    pub partition: Partition,
    pub inducing_cover: OddCycleCover,
}

/// `G[A] ∪ G[B]` on the host's vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WithinGraph {
    pub graph: Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverCheck {
    /// Re-solve to confirm the cover is minimum.
    #[default]
    Verify,
    /// The caller vouches for minimality.
    Trusted,
}

pub fn within_graph(g: &Graph, p: &Partition) -> WithinGraph {
    let mut b = GraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        if p.same_side(u, v) {
            b.add_edge(u, v);
        }
    }
    WithinGraph { graph: b.build() }
}

/// Neighbor counts of `v` into `A \ X` and `B \ X`.
fn side_counts(g: &Graph, v: usize, in_b: &[bool], in_x: &[bool]) -> (usize, usize) {
    let mut into_a = 0;
    let mut into_b = 0;
    for &w in g.neighbors(v) {
        if in_x[w] {
            continue;
        }
        if in_b[w] {
            into_b += 1;
        } else {
            into_a += 1;
        }
    }
    (into_a, into_b)
}

/// The nice partition induced by the minimum odd cycle cover `x`: the
/// canonical bipartition of `g - x`, then every cover vertex goes to the
/// side opposite its majority of neighbors outside `x` (ties to `A`).
pub fn nice_partition(
    g: &Graph,
    x: &OddCycleCover,
    check: CoverCheck,
    budget: &Budget,
) -> Result<NicePartition> {
    x.members.check_range(g.n())?;
    let rest = g.without_vertices(x.members.as_slice());
    let Some(sides) = crate::graph::bipartite::two_coloring(&rest) else {
        return Err(Error::Precondition(
            "supplied set is not an odd cycle cover".into(),
        ));
    };
    if check == CoverCheck::Verify {
        let opt = min_odd_cycle_cover(g, budget)?;
        if opt.members.len() != x.members.len() {
            return Err(Error::Precondition(format!(
                "cover of size {} is not minimum (optimum {})",
                x.members.len(),
                opt.members.len()
            )));
        }
    }
    let in_x = x.members.indicator(g.n());
    // vertices of x are isolated in `rest`, so the coloring put them in A
    let mut in_b = sides;
    for v in x.members.iter() {
        let (into_a, into_b) = side_counts(g, v, &in_b, &in_x);
        in_b[v] = into_a > into_b;
    }
    Ok(NicePartition {
        partition: Partition::from_sides(&in_b),
        inducing_cover: OddCycleCover {
            members: x.members.clone(),
            minimal: true,
        },
    })
}

/// Every partition induced by `x` in the broad sense: any bipartition of
/// `g - x` (component flips, up to swapping the two sides) combined with
/// either placement of each tied cover vertex. At most `limit` partitions
/// are produced.
pub fn induced_partitions(g: &Graph, x: &VertexSet, limit: usize) -> Result<Vec<Partition>> {
    let rest = g.without_vertices(x.as_slice());
    let in_x = x.indicator(g.n());
    let Some(base) = crate::graph::bipartite::two_coloring(&rest) else {
        return Err(Error::Precondition("not an odd cycle cover".into()));
    };
    let comps: Vec<Vec<usize>> = rest
        .components()
        .into_iter()
        .filter(|c| !(c.len() == 1 && in_x[c[0]]))
        .collect();
    let mut out = Vec::new();
    // component 0 is never flipped: flipping all of them swaps A and B
    let flips = comps.len().saturating_sub(1);
    if flips >= 63 {
        return Err(Error::InvalidInput(
            "too many components to enumerate".into(),
        ));
    }
    for flip_mask in 0u64..1 << flips {
        let mut in_b = base.clone();
        for (ci, comp) in comps.iter().enumerate().skip(1) {
            if flip_mask >> (ci - 1) & 1 == 1 {
                for &v in comp {
                    in_b[v] = !in_b[v];
                }
            }
        }
        let mut ties = Vec::new();
        for v in x.iter() {
            let (into_a, into_b) = side_counts(g, v, &in_b, &in_x);
            if into_a == into_b {
                in_b[v] = false;
                ties.push(v);
            } else {
                in_b[v] = into_a > into_b;
            }
        }
        if ties.len() >= 63 {
            return Err(Error::InvalidInput("too many tied cover vertices".into()));
        }
        for tie_mask in 0u64..1 << ties.len() {
            for (ti, &v) in ties.iter().enumerate() {
                in_b[v] = tie_mask >> ti & 1 == 1;
            }
            out.push(Partition::from_sides(&in_b));
            if out.len() >= limit {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Checks the three nice-partition invariants. Minimality of the cover is
/// re-solved only under [`CoverCheck::Verify`].
pub fn validate_nice_partition(
    g: &Graph,
    np: &NicePartition,
    check: CoverCheck,
    budget: &Budget,
) -> std::result::Result<(), String> {
    let p = &np.partition;
    let x = &np.inducing_cover.members;
    if Partition::new(g.n(), p.a.clone(), p.b.clone()).is_err() {
        return Err("parts do not partition the vertex set".into());
    }
    if !is_odd_cycle_cover(g, x) {
        return Err("inducing set is not an odd cycle cover".into());
    }
    if check == CoverCheck::Verify {
        let opt = min_odd_cycle_cover(g, budget).map_err(|e| e.to_string())?;
        if opt.members.len() != x.len() {
            return Err("inducing cover is not minimum".into());
        }
    }
    for (u, v) in g.edges() {
        if !x.contains(u) && !x.contains(v) && p.same_side(u, v) {
            return Err(format!("edge {u}-{v} inside a part outside the cover"));
        }
    }
    let in_x = x.indicator(g.n());
    let in_b: Vec<bool> = (0..g.n()).map(|v| !p.in_a(v)).collect();
    for v in x.iter() {
        let (into_a, into_b) = side_counts(g, v, &in_b, &in_x);
        let ok = if p.in_a(v) {
            into_b >= into_a
        } else {
            into_a > into_b
        };
        if !ok {
            return Err(format!("cover vertex {v} sits on its majority side"));
        }
    }
    Ok(())
}

/// τ(G - e) < τ(G) for every edge and τ(G - v) < τ(G) for every vertex.
pub fn is_tau_critical(g: &Graph, budget: &Budget) -> Result<bool> {
    let base = tau(g, budget)?;
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            return Ok(false);
        }
    }
    for v in 0..g.n() {
        if tau(&g.without_vertices(&[v]), budget)? >= base {
            return Ok(false);
        }
    }
    for (u, v) in g.edges() {
        if tau(&g.without_edge(u, v), budget)? >= base {
            return Ok(false);
        }
    }
    Ok(true)
}
