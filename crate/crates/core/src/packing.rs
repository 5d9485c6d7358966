//! Disjoint odd S-cycles and the pack-or-cover drivers around them.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::covers::{
    for_each_combination, min_odd_cycle_cover, min_odd_s_cycle_cover, odd_s_cycle_within,
    OddCycleCover, OddSCycleCover,
};
use crate::error::{Error, Result};
use crate::graph::bipartite::component_sides;
use crate::graph::{mask_from, mask_iter, vertex_connectivity, Cycle, Graph, Mask, VertexSet};
use crate::linkage::Linkage;
use crate::partitions::{
    max_matching_size, nice_partition, tau, within_graph, CoverCheck, NicePartition,
};
use crate::pbm::{Parity, TerminalSystem};

/// Disjoint odd cycles, each meeting the terminal set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePacking {
    pub cycles: Vec<Cycle>,
}

impl CyclePacking {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn validate(&self, g: &Graph, s: &VertexSet) -> std::result::Result<(), String> {
        let mut seen = vec![false; g.n()];
        for (i, c) in self.cycles.iter().enumerate() {
            Cycle::new(g, c.vertices().to_vec()).map_err(|e| format!("cycle {i}: {e}"))?;
            if !c.is_odd() {
                return Err(format!("cycle {i} is even"));
            }
            if !c.meets(s) {
                return Err(format!("cycle {i} misses the terminal set"));
            }
            for &v in c.vertices() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(format!("vertex {v} lies on two cycles"));
                }
            }
        }
        Ok(())
    }
}

/// `k` disjoint odd S-cycles, or `None` if there are none.
///
/// A greedy pass takes odd S-cycles one at a time; if it stalls, an
/// exhaustive search anchors every cycle at its least terminal, with
/// anchors increasing along the packing.
pub fn pack_odd_s_cycles(
    g: &Graph,
    s: &VertexSet,
    k: usize,
    budget: &Budget,
) -> Result<Option<CyclePacking>> {
    g.require_mask()?;
    s.check_range(g.n())?;
    if k == 0 {
        return Ok(Some(CyclePacking::default()));
    }
    let sm = s.to_mask();
    let mut alive = g.full_mask();
    let mut greedy = Vec::new();
    while greedy.len() < k {
        let Some(c) = odd_s_cycle_within(g, sm, alive) else {
            break;
        };
        for &v in &c {
            alive &= !(1 << v);
        }
        greedy.push(Cycle::new_unchecked(c));
    }
    if greedy.len() == k {
        return Ok(Some(CyclePacking { cycles: greedy }));
    }
    if greedy.is_empty() {
        return Ok(None);
    }
    exhaustive_packing(g, sm, k, budget)
}

fn exhaustive_packing(
    g: &Graph,
    s: Mask,
    k: usize,
    budget: &Budget,
) -> Result<Option<CyclePacking>> {
    let mut search = CycleSearch {
        g,
        s,
        k,
        failed_walks: HashSet::new(),
        failed_starts: HashSet::new(),
        meter: budget.meter(),
        cycles: Vec::new(),
    };
    if search.next_cycle(0, 0)? {
        Ok(Some(CyclePacking {
            cycles: search
                .cycles
                .into_iter()
                .map(Cycle::new_unchecked)
                .collect(),
        }))
    } else {
        Ok(None)
    }
}

/// Largest number of disjoint odd S-cycles.
pub fn max_odd_s_cycle_packing(g: &Graph, s: &VertexSet, budget: &Budget) -> Result<usize> {
    let mut k = 0;
    while pack_odd_s_cycles(g, s, k + 1, budget)?.is_some() {
        k += 1;
    }
    Ok(k)
}

struct CycleSearch<'a> {
    g: &'a Graph,
    s: Mask,
    k: usize,
    failed_walks: HashSet<(Mask, u32)>,
    failed_starts: HashSet<(Mask, u32)>,
    meter: Meter,
    cycles: Vec<Vec<usize>>,
}

impl CycleSearch<'_> {
    fn next_cycle(&mut self, used: Mask, min_anchor: usize) -> Result<bool> {
        if self.cycles.len() == self.k {
            return Ok(true);
        }
        self.meter.tick()?;
        let key = (used, (self.cycles.len() as u32) << 16 | min_anchor as u32);
        if self.failed_starts.contains(&key) {
            return Ok(false);
        }
        let alive = self.g.full_mask() & !used;
        if odd_s_cycle_within(self.g, self.s & mask_from(min_anchor), alive).is_some() {
            for a in mask_iter(self.s & alive & mask_from(min_anchor)) {
                self.cycles.push(vec![a]);
                if self.walk(used | 1 << a, a, a, 0)? {
                    return Ok(true);
                }
                self.cycles.pop();
            }
        }
        self.failed_starts.insert(key);
        Ok(false)
    }

    /// Extends the path `a .. v`; terminals below `a` are off limits.
    fn walk(&mut self, used: Mask, a: usize, v: usize, parity: u32) -> Result<bool> {
        self.meter.tick()?;
        let key = (
            used,
            (self.cycles.len() as u32) << 16 | (a as u32) << 9 | (v as u32) << 1 | parity,
        );
        if self.failed_walks.contains(&key) {
            return Ok(false);
        }
        let allowed = self.g.full_mask() & !used & !(self.s & !mask_from(a));
        match component_sides(self.g, v, allowed | 1 << a) {
            Some(_) if v == a => {
                self.failed_walks.insert(key);
                return Ok(false);
            }
            Some((comp, odd_side)) => {
                if comp >> a & 1 == 0 || parity ^ (odd_side >> a & 1) as u32 != 1 {
                    self.failed_walks.insert(key);
                    return Ok(false);
                }
            }
            None => {
                if self.g.reach(v, allowed | 1 << a) >> a & 1 == 0 {
                    self.failed_walks.insert(key);
                    return Ok(false);
                }
            }
        }
        let g = self.g;
        let current = self.cycles.len() - 1;
        for &w in g.neighbors(v) {
            if w == a {
                // closing edge makes the length odd and at least 3
                if parity == 0 && v != a {
                    if self.next_cycle(used, a + 1)? {
                        return Ok(true);
                    }
                }
            } else if allowed >> w & 1 == 1 {
                self.cycles[current].push(w);
                if self.walk(used | 1 << w, a, w, parity ^ 1)? {
                    return Ok(true);
                }
                self.cycles[current].pop();
            }
        }
        self.failed_walks.insert(key);
        Ok(false)
    }
}

/// `g` with a twin `n + i` of the `i`-th vertex of `s` (same neighbors in
/// `g`), and the pairs `(s_i, n + i)` with odd parity demanded.
pub fn twin_reduction(g: &Graph, s: &VertexSet) -> Result<(Graph, TerminalSystem)> {
    s.check_range(g.n())?;
    let n = g.n();
    let mut extra = Vec::new();
    for (i, v) in s.iter().enumerate() {
        for &w in g.neighbors(v) {
            extra.push((w, n + i));
        }
    }
    let augmented = g.extended(s.len(), &extra);
    let pairs: Vec<(usize, usize)> = s.iter().enumerate().map(|(i, v)| (v, n + i)).collect();
    let parities = vec![Parity::Odd; pairs.len()];
    let ts = TerminalSystem::with_parities(pairs, parities)?;
    Ok((augmented, ts))
}

/// Maps an odd `s`–`s'` path of the augmented graph to an odd cycle through
/// `s` in `g`: the twin is replaced by closing the cycle at `s`.
pub fn twin_path_to_cycle(g: &Graph, path: &[usize]) -> Result<Cycle> {
    if path.len() < 4 || path.len() % 2 != 0 {
        return Err(Error::InvalidInput(
            "an odd path with at least three edges is expected".into(),
        ));
    }
    Cycle::new(g, path[..path.len() - 1].to_vec())
}

/// Maps a parity linkage of [`twin_reduction`] back to disjoint odd cycles.
pub fn twin_linkage_to_packing(g: &Graph, linkage: &Linkage) -> Result<CyclePacking> {
    let cycles = linkage
        .paths
        .iter()
        .map(|p| twin_path_to_cycle(g, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(CyclePacking { cycles })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Packing(CyclePacking),
    SCycleCover(OddSCycleCover),
    BipartiteCover(OddCycleCover),
}

/// A pack-or-cover verdict. `bound_met` compares the cover with the bound;
/// nothing is asserted when `connectivity` is below the hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyResult {
    pub outcome: Outcome,
    pub bound: usize,
    pub bound_met: bool,
    pub connectivity: usize,
    /// `τ_k(G[S])`, bipartite-cover variant only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_k: Option<usize>,
    /// Cover size against `3k - 3`, bipartite-cover variant only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relaxed_bound_met: Option<bool>,
}

impl DichotomyResult {
    pub fn is_packing(&self) -> bool {
        matches!(self.outcome, Outcome::Packing(_))
    }

    /// Re-checks the embedded certificate against the input.
    pub fn verify(&self, g: &Graph, s: &VertexSet, k: usize) -> bool {
        match &self.outcome {
            Outcome::Packing(p) => p.len() == k && p.validate(g, s).is_ok(),
            Outcome::SCycleCover(c) => crate::covers::verify_cover(g, s, &c.members),
            Outcome::BipartiteCover(c) => crate::covers::is_odd_cycle_cover(g, &c.members),
        }
    }
}

/// `k` disjoint odd S-cycles, or a minimum odd S-cycle cover compared with
/// `2k - 2`.
pub fn dichotomy_s_cycles(
    g: &Graph,
    s: &VertexSet,
    k: usize,
    budget: &Budget,
) -> Result<DichotomyResult> {
    let connectivity = vertex_connectivity(g);
    let bound = (2 * k).saturating_sub(2);
    if let Some(p) = pack_odd_s_cycles(g, s, k, budget)? {
        return Ok(DichotomyResult {
            outcome: Outcome::Packing(p),
            bound,
            bound_met: true,
            connectivity,
            tau_k: None,
            relaxed_bound_met: None,
        });
    }
    let cover = min_odd_s_cycle_cover(g, s, budget)?;
    Ok(DichotomyResult {
        bound_met: cover.members.len() <= bound,
        outcome: Outcome::SCycleCover(cover),
        bound,
        connectivity,
        tau_k: None,
        relaxed_bound_met: None,
    })
}

/// Least vertex cover number over the `k`-subsets of `s`.
pub fn tau_k(g: &Graph, s: &VertexSet, k: usize, budget: &Budget) -> Result<usize> {
    if k > s.len() {
        return Err(Error::Precondition(format!(
            "|S| = {} is smaller than k = {k}",
            s.len()
        )));
    }
    let members = s.as_slice();
    let mut best = usize::MAX;
    for_each_combination(members.len(), k, &mut |comb| {
        let chosen: Vec<usize> = mask_iter(comb).map(|i| members[i]).collect();
        best = best.min(tau(&g.induced(&chosen).graph, budget)?);
        Ok(best > 0)
    })?;
    Ok(best)
}

/// `k` disjoint odd S-cycles, or a minimum odd cycle cover compared with
/// `2k - 2 + τ_k(G[S])` and with the relaxation `3k - 3`.
pub fn dichotomy_bipartite_cover(
    g: &Graph,
    s: &VertexSet,
    k: usize,
    budget: &Budget,
) -> Result<DichotomyResult> {
    s.check_range(g.n())?;
    let tk = tau_k(g, s, k, budget)?;
    let bound = (2 * k + tk).saturating_sub(2);
    let relaxed = (3 * k).saturating_sub(3);
    let connectivity = vertex_connectivity(g);
    if let Some(p) = pack_odd_s_cycles(g, s, k, budget)? {
        return Ok(DichotomyResult {
            outcome: Outcome::Packing(p),
            bound,
            bound_met: true,
            connectivity,
            tau_k: Some(tk),
            relaxed_bound_met: Some(true),
        });
    }
    let cover = min_odd_cycle_cover(g, budget)?;
    let size = cover.members.len();
    Ok(DichotomyResult {
        outcome: Outcome::BipartiteCover(cover),
        bound,
        bound_met: size <= bound,
        connectivity,
        tau_k: Some(tk),
        relaxed_bound_met: Some(size <= relaxed),
    })
}

/// `k` disjoint triangles picked greedily: the least remaining vertex `u`
/// and the least edge `vw` inside its remaining neighborhood.
pub fn greedy_triangle_packing(g: &Graph, k: usize) -> Option<Vec<Cycle>> {
    let mut alive = vec![true; g.n()];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let u = (0..g.n()).find(|&v| alive[v])?;
        let nbrs: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| alive[v])
            .collect();
        let (v, w) = nbrs.iter().enumerate().find_map(|(i, &v)| {
            nbrs[i + 1..]
                .iter()
                .find(|&&w| g.has_edge(v, w))
                .map(|&w| (v, w))
        })?;
        for x in [u, v, w] {
            alive[x] = false;
        }
        out.push(Cycle::new_unchecked(vec![u, v, w]));
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchingFormOutcome {
    /// Odd cycles through an independent set of size `k`.
    IndependentSet {
        independent: VertexSet,
        packing: CyclePacking,
    },
    Triangles {
        packing: CyclePacking,
    },
    /// Neither route found `k` cycles; the canonical nice partition and the
    /// matching number of its within-graph.
    Report {
        partition: NicePartition,
        matching_number: usize,
        deficient: bool,
    },
}

/// `k` disjoint odd cycles via an independent `k`-set or greedy triangles,
/// else the within-graph matching report.
pub fn dichotomy_matching_form(
    g: &Graph,
    k: usize,
    budget: &Budget,
) -> Result<MatchingFormOutcome> {
    g.require_mask()?;
    let mut meter = budget.meter();
    if let Some(ind) = independent_set(g, k, &mut meter)? {
        if let Some(packing) = pack_odd_s_cycles(g, &ind, k, budget)? {
            return Ok(MatchingFormOutcome::IndependentSet {
                independent: ind,
                packing,
            });
        }
    }
    if let Some(triangles) = greedy_triangle_packing(g, k) {
        return Ok(MatchingFormOutcome::Triangles {
            packing: CyclePacking { cycles: triangles },
        });
    }
    let x = min_odd_cycle_cover(g, budget)?;
    let np = nice_partition(g, &x, CoverCheck::Trusted, budget)?;
    let within = within_graph(g, &np.partition).graph;
    let nu = max_matching_size(&within, budget)?;
    Ok(MatchingFormOutcome::Report {
        partition: np,
        matching_number: nu,
        deficient: nu < k,
    })
}

/// The lexicographically least independent set of size `k`.
fn independent_set(g: &Graph, k: usize, meter: &mut Meter) -> Result<Option<VertexSet>> {
    fn grow(
        g: &Graph,
        candidates: Mask,
        chosen: Mask,
        k: usize,
        meter: &mut Meter,
    ) -> Result<Option<Mask>> {
        meter.tick()?;
        if chosen.count_ones() as usize == k {
            return Ok(Some(chosen));
        }
        if (chosen.count_ones() + candidates.count_ones()) < k as u32 {
            return Ok(None);
        }
        for v in mask_iter(candidates) {
            let rest = candidates & mask_from(v + 1) & !g.nbr_mask(v);
            if let Some(found) = grow(g, rest, chosen | 1 << v, k, meter)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
    Ok(grow(g, g.full_mask(), 0, k, meter)?.map(VertexSet::from_mask))
}
