//! Exact vertex cover number by branch-and-bound on bitmasks, with a
//! greedy-matching lower bound.

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::{mask_iter, Graph, Mask, VertexSet};

/// Exact vertex cover number τ(g).
pub fn tau(g: &Graph, budget: &Budget) -> Result<usize> {
    g.require_mask()?;
    let mut meter = budget.meter();
    tau_masked(g, all_vertices(g), &mut meter)
}

/// The lexicographically least minimum vertex cover.
pub fn min_vertex_cover(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    g.require_mask()?;
    let mut meter = budget.meter();
    let all = all_vertices(g);
    let opt = tau_masked(g, all, &mut meter)?;
    let mut chosen: Mask = 0;
    let mut excluded: Mask = 0;
    for v in 0..g.n() {
        if chosen.count_ones() as usize == opt {
            break;
        }
        let bit = 1 << v;
        if cost_with(g, all, chosen | bit, excluded, &mut meter)? == Some(opt) {
            chosen |= bit;
        } else {
            excluded |= bit;
        }
    }
    debug_assert!(g
        .edges()
        .all(|(u, v)| chosen >> u & 1 == 1 || chosen >> v & 1 == 1));
    Ok(VertexSet::from_mask(chosen))
}

/// Smallest cover containing `forced` and avoiding `excluded`, if any.
fn cost_with(
    g: &Graph,
    all: Mask,
    forced: Mask,
    excluded: Mask,
    meter: &mut Meter,
) -> Result<Option<usize>> {
    let mut must = forced;
    for u in mask_iter(excluded) {
        if g.nbr_mask(u) & excluded != 0 {
            return Ok(None);
        }
        must |= g.nbr_mask(u);
    }
    if must & excluded != 0 {
        return Ok(None);
    }
    let rest = all & !must & !excluded;
    Ok(Some(
        must.count_ones() as usize + tau_masked(g, rest, meter)?,
    ))
}

pub(crate) fn all_vertices(g: &Graph) -> Mask {
    if g.n() == 128 {
        Mask::MAX
    } else {
        (1 << g.n()) - 1
    }
}

/// τ of the subgraph induced by `alive`.
pub(crate) fn tau_masked(g: &Graph, alive: Mask, meter: &mut Meter) -> Result<usize> {
    let upper = 2 * greedy_matching(g, alive);
    let mut best = upper;
    branch(g, alive, 0, &mut best, meter)?;
    Ok(best)
}

fn greedy_matching(g: &Graph, mut alive: Mask) -> usize {
    let mut size = 0;
    while alive != 0 {
        let v = alive.trailing_zeros() as usize;
        alive &= !(1 << v);
        let nb = g.nbr_mask(v) & alive;
        if nb != 0 {
            let w = nb.trailing_zeros() as usize;
            alive &= !(1 << w);
            size += 1;
        }
    }
    size
}

fn branch(
    g: &Graph,
    mut alive: Mask,
    mut cur: usize,
    best: &mut usize,
    meter: &mut Meter,
) -> Result<()> {
    meter.tick()?;
    // degree-0 and degree-1 reductions
    loop {
        let mut changed = false;
        for v in mask_iter(alive) {
            if alive >> v & 1 == 0 {
                continue;
            }
            let nb = g.nbr_mask(v) & alive;
            match nb.count_ones() {
                0 => {
                    alive &= !(1 << v);
                    changed = true;
                }
                1 => {
                    alive &= !(1 << v) & !nb;
                    cur += 1;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if cur >= *best {
        return Ok(());
    }
    if alive == 0 {
        *best = cur;
        return Ok(());
    }
    if cur + greedy_matching(g, alive) >= *best {
        return Ok(());
    }
    let mut pick = 0;
    let mut pick_deg = 0;
    for v in mask_iter(alive) {
        let d = (g.nbr_mask(v) & alive).count_ones();
        if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    let nb = g.nbr_mask(pick) & alive;
    branch(g, alive & !(1 << pick), cur + 1, best, meter)?;
    branch(
        g,
        alive & !(1 << pick) & !nb,
        cur + pick_deg as usize,
        best,
        meter,
    )?;
    Ok(())
}
