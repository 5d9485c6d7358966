//! Exact minimum odd cycle covers and odd S-cycle covers.
//!
//! Both problems are hitting-set problems over an obstruction family (odd
//! cycles, resp. odd cycles meeting `S`). Small graphs are solved by
//! enumerating vertex subsets in (size, lexicographic) order; larger ones by
//! branching on the vertices of a found obstruction with a packing lower
//! bound. Either way the lexicographically least minimum cover is returned.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::bipartite::mask_is_bipartite;
use crate::graph::{find_odd_cycle, find_odd_s_cycle, mask_iter, Graph, Mask, VertexSet};

/// Below this many vertices the subset enumeration is used.
pub const ENUMERATION_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycleCover {
    pub members: VertexSet,
    pub minimal: bool,
}

impl OddCycleCover {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSCycleCover {
    pub members: VertexSet,
    pub terminals: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Enumerate,
    BranchAndBound,
}

/// True iff `g - x` is bipartite.
pub fn is_odd_cycle_cover(g: &Graph, x: &VertexSet) -> bool {
    let rest = g.without_vertices(x.as_slice());
    crate::graph::is_bipartite(&rest).is_some()
}

/// True iff `g - x` has no odd cycle through a vertex of `s \ x`.
pub fn verify_cover(g: &Graph, s: &VertexSet, x: &VertexSet) -> bool {
    let rest = g.without_vertices(x.as_slice());
    find_odd_s_cycle(&rest, &s.difference(x)).is_none()
}

pub fn min_odd_cycle_cover(g: &Graph, budget: &Budget) -> Result<OddCycleCover> {
    min_odd_cycle_cover_with(g, budget, Strategy::Auto)
}

pub fn min_odd_cycle_cover_with(
    g: &Graph,
    budget: &Budget,
    strategy: Strategy,
) -> Result<OddCycleCover> {
    g.require_mask()?;
    let members = solve(&OddCycles { g }, g.n(), budget, strategy)?;
    Ok(OddCycleCover {
        members,
        minimal: true,
    })
}

pub fn min_odd_s_cycle_cover(g: &Graph, s: &VertexSet, budget: &Budget) -> Result<OddSCycleCover> {
    min_odd_s_cycle_cover_with(g, s, budget, Strategy::Auto)
}

pub fn min_odd_s_cycle_cover_with(
    g: &Graph,
    s: &VertexSet,
    budget: &Budget,
    strategy: Strategy,
) -> Result<OddSCycleCover> {
    g.require_mask()?;
    s.check_range(g.n())?;
    let members = solve(&OddSCycles { g, s: s.to_mask() }, g.n(), budget, strategy)?;
    Ok(OddSCycleCover {
        members,
        terminals: s.clone(),
    })
}

/// Every minimum odd cycle cover, in lexicographic order.
pub fn all_min_odd_cycle_covers(g: &Graph, budget: &Budget) -> Result<Vec<VertexSet>> {
    g.require_mask()?;
    let opt = min_odd_cycle_cover(g, budget)?.members.len();
    let family = OddCycles { g };
    let mut meter = budget.meter();
    let all = full_mask(g.n());
    let mut out = Vec::new();
    for_each_combination(g.n(), opt, &mut |comb| {
        meter.tick()?;
        if family.is_clear(all & !comb) {
            out.push(VertexSet::from_mask(comb));
        }
        Ok(true)
    })?;
    Ok(out)
}

/// A family of vertex sets ("obstructions") to be hit.
trait Obstruction {
    /// Some obstruction inside `G[alive]`, as parent vertex ids.
    fn find(&self, alive: Mask) -> Option<Vec<usize>>;

    fn is_clear(&self, alive: Mask) -> bool {
        self.find(alive).is_none()
    }
}

struct OddCycles<'a> {
    g: &'a Graph,
}

impl Obstruction for OddCycles<'_> {
    fn find(&self, alive: Mask) -> Option<Vec<usize>> {
        let verts: Vec<usize> = mask_iter(alive).collect();
        let sub = self.g.induced(&verts);
        find_odd_cycle(&sub.graph).map(|c| sub.lift_all(c.vertices()))
    }

    fn is_clear(&self, alive: Mask) -> bool {
        mask_is_bipartite(self.g, alive)
    }
}

struct OddSCycles<'a> {
    g: &'a Graph,
    s: Mask,
}

impl Obstruction for OddSCycles<'_> {
    fn find(&self, alive: Mask) -> Option<Vec<usize>> {
        odd_s_cycle_within(self.g, self.s, alive)
    }
}

/// Some odd cycle of `G[alive]` through a vertex of `s`, in parent ids.
pub(crate) fn odd_s_cycle_within(g: &Graph, s: Mask, alive: Mask) -> Option<Vec<usize>> {
    let terminals = s & alive;
    if terminals == 0 {
        return None;
    }
    let verts: Vec<usize> = mask_iter(alive).collect();
    let sub = g.induced(&verts);
    let local_s = VertexSet::new(
        verts
            .iter()
            .enumerate()
            .filter(|(_, &v)| terminals >> v & 1 == 1)
            .map(|(i, _)| i),
    );
    find_odd_s_cycle(&sub.graph, &local_s).map(|c| sub.lift_all(c.vertices()))
}

fn full_mask(n: usize) -> Mask {
    if n == 128 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn solve(
    family: &dyn Obstruction,
    n: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<VertexSet> {
    let mut meter = budget.meter();
    let enumerate = match strategy {
        Strategy::Auto => n < ENUMERATION_LIMIT,
        Strategy::Enumerate => true,
        Strategy::BranchAndBound => false,
    };
    let mask = if enumerate {
        solve_by_enumeration(family, n, &mut meter)?
    } else {
        solve_by_branching(family, n, &mut meter)?
    };
    Ok(VertexSet::from_mask(mask))
}

fn solve_by_enumeration(family: &dyn Obstruction, n: usize, meter: &mut Meter) -> Result<Mask> {
    let all = full_mask(n);
    for size in 0..=n {
        let mut found = None;
        for_each_combination(n, size, &mut |comb| {
            meter.tick()?;
            if family.is_clear(all & !comb) {
                found = Some(comb);
                return Ok(false);
            }
            Ok(true)
        })?;
        if let Some(comb) = found {
            return Ok(comb);
        }
    }
    unreachable!("removing every vertex clears any family")
}

/// Visits the `size`-subsets of `0..n` in lexicographic order until the
/// callback returns `false`.
pub(crate) fn for_each_combination(
    n: usize,
    size: usize,
    f: &mut dyn FnMut(Mask) -> Result<bool>,
) -> Result<()> {
    if size > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mask = idx.iter().fold(0, |acc: Mask, &i| acc | (1 << i));
        if !f(mask)? {
            return Ok(());
        }
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(());
        }
        let i = i - 1;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn solve_by_branching(family: &dyn Obstruction, n: usize, meter: &mut Meter) -> Result<Mask> {
    let all = full_mask(n);
    let mut k = packing_bound(family, all);
    let opt = loop {
        if feasible(family, all, k, 0, meter)?.is_some() {
            break k;
        }
        k += 1;
    };
    // lexicographically least: take each vertex in turn if a cover of the
    // remaining size still exists with it
    let mut chosen: Mask = 0;
    let mut excluded: Mask = 0;
    let mut remaining = opt;
    for v in 0..n {
        if remaining == 0 {
            break;
        }
        let bit = 1 << v;
        if feasible(family, all & !chosen & !bit, remaining - 1, excluded, meter)?.is_some() {
            chosen |= bit;
            remaining -= 1;
        } else {
            excluded |= bit;
        }
    }
    debug_assert!(family.is_clear(all & !chosen));
    Ok(chosen)
}

/// Greedy count of disjoint obstructions: a lower bound on any cover.
fn packing_bound(family: &dyn Obstruction, mut alive: Mask) -> usize {
    let mut count = 0;
    while let Some(obs) = family.find(alive) {
        count += 1;
        for v in obs {
            alive &= !(1 << v);
        }
    }
    count
}

/// A set of at most `k` non-`forbidden` vertices hitting every obstruction
/// inside `G[alive]`.
fn feasible(
    family: &dyn Obstruction,
    alive: Mask,
    k: usize,
    forbidden: Mask,
    meter: &mut Meter,
) -> Result<Option<Mask>> {
    meter.tick()?;
    let Some(obs) = family.find(alive) else {
        return Ok(Some(0));
    };
    if k == 0 || packing_bound(family, alive) > k {
        return Ok(None);
    }
    let mut forbidden = forbidden;
    let mut branch: Vec<usize> = obs;
    branch.sort_unstable();
    for v in branch {
        let bit = 1 << v;
        if forbidden & bit != 0 {
            continue;
        }
        if let Some(rest) = feasible(family, alive & !bit, k - 1, forbidden, meter)? {
            return Ok(Some(rest | bit));
        }
        // no cover through v: later branches may assume v stays
        forbidden |= bit;
    }
    Ok(None)
}
