use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};

/// A proper 2-coloring. In every connected component the side holding the
/// component's lowest vertex id is in `first`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub first: VertexSet,
    pub second: VertexSet,
}

/// Canonical 2-coloring of `g`, or `None` when `g` has an odd cycle.
pub fn is_bipartite(g: &Graph) -> Option<Bipartition> {
    let side = two_coloring(g)?;
    let first = (0..g.n()).filter(|&v| !side[v]);
    let second = (0..g.n()).filter(|&v| side[v]);
    Some(Bipartition {
        first: VertexSet::new(first),
        second: VertexSet::new(second),
    })
}

/// `side[v] == false` for the first part. BFS from the lowest unvisited id
/// realizes the canonical choice.
pub(crate) fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(|c| c.unwrap()).collect())
}

/// Bipartiteness of the subgraph induced by `alive`, on bitmasks.
pub(crate) fn mask_is_bipartite(g: &Graph, alive: super::Mask) -> bool {
    let mut unseen = alive;
    while unseen != 0 {
        let root = unseen.trailing_zeros() as usize;
        let mut side_a: super::Mask = 1 << root;
        let mut side_b: super::Mask = 0;
        let mut frontier: super::Mask = 1 << root;
        let mut frontier_is_a = true;
        unseen &= !(1 << root);
        while frontier != 0 {
            let mut next: super::Mask = 0;
            for v in super::mask_iter(frontier) {
                next |= g.nbr_mask(v) & alive;
            }
            let (same, other) = if frontier_is_a {
                (side_a, &mut side_b)
            } else {
                (side_b, &mut side_a)
            };
            if next & same != 0 {
                return false;
            }
            next &= !*other;
            *other |= next;
            unseen &= !next;
            frontier = next;
            frontier_is_a = !frontier_is_a;
        }
    }
    true
}

/// Two-coloring of the component of `root` inside `allowed ∪ {root}`: the
/// component and the vertices at odd distance, or `None` if it has an odd
/// cycle.
pub(crate) fn component_sides(
    g: &Graph,
    root: usize,
    allowed: super::Mask,
) -> Option<(super::Mask, super::Mask)> {
    let allowed = allowed | 1 << root;
    let mut even: super::Mask = 1 << root;
    let mut odd: super::Mask = 0;
    let mut frontier: super::Mask = 1 << root;
    let mut at_odd = false;
    while frontier != 0 {
        let mut next: super::Mask = 0;
        for v in super::mask_iter(frontier) {
            next |= g.nbr_mask(v) & allowed;
        }
        let (same, other) = if at_odd { (odd, even) } else { (even, odd) };
        if next & same != 0 {
            return None;
        }
        next &= !other;
        if at_odd {
            even |= next;
        } else {
            odd |= next;
        }
        frontier = next;
        at_odd = !at_odd;
    }
    Some((even | odd, odd))
}
