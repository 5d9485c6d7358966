//! Parity-breaking matchings: an edge `m_i` inside the parts of a partition
//! for every demanded pair `i`, avoiding the terminals of every other pair.
//!
//! Two constructive extractors follow the inductive existence arguments
//! (τ ≥ 4k−3 for arbitrary terminals, τ ≥ 2k−1 for independent terminals);
//! [`brute_force_pbm`] is the exhaustive reference.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::covers::all_min_odd_cycle_covers;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::partitions::{
    induced_partitions, konig_matching, min_vertex_cover, tau, within_graph, Partition,
};

pub use crate::partitions::{Edge, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(edges: usize) -> Parity {
        if edges % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// `k` terminal pairs with pairwise distinct vertices, the parity set `I`
/// (0-based pair indices), and the parity demanded for each `i ∈ I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalSystem {
    pairs: Vec<(usize, usize)>,
    parity_set: BTreeSet<usize>,
    demands: BTreeMap<usize, Parity>,
}

impl TerminalSystem {
    pub fn new(pairs: Vec<(usize, usize)>, parity_set: BTreeSet<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(s, t) in &pairs {
            if !seen.insert(s) || !seen.insert(t) {
                return Err(Error::InvalidInput(format!(
                    "terminal vertices must be pairwise distinct (pair {s},{t})"
                )));
            }
        }
        if let Some(&i) = parity_set.iter().find(|&&i| i >= pairs.len()) {
            return Err(Error::InvalidInput(format!(
                "parity index {i} outside 0..{}",
                pairs.len()
            )));
        }
        Ok(TerminalSystem {
            pairs,
            parity_set,
            demands: BTreeMap::new(),
        })
    }

    /// Pairs without any parity requirement.
    pub fn plain(pairs: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(pairs, BTreeSet::new())
    }

    /// Every pair in the parity set, each with its demanded parity.
    pub fn with_parities(pairs: Vec<(usize, usize)>, parities: Vec<Parity>) -> Result<Self> {
        if parities.len() != pairs.len() {
            return Err(Error::InvalidInput("one parity per pair expected".into()));
        }
        let all: BTreeSet<usize> = (0..pairs.len()).collect();
        Self::new(pairs, all)?.with_demands(parities.into_iter().enumerate().collect())
    }

    pub fn with_demands(mut self, demands: BTreeMap<usize, Parity>) -> Result<Self> {
        if let Some(&i) = demands.keys().find(|i| !self.parity_set.contains(i)) {
            return Err(Error::InvalidInput(format!(
                "parity demanded for pair {i} outside the parity set"
            )));
        }
        self.demands = demands;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn parity_set(&self) -> &BTreeSet<usize> {
        &self.parity_set
    }

    pub fn demands(&self) -> &BTreeMap<usize, Parity> {
        &self.demands
    }

    pub fn demand(&self, i: usize) -> Option<Parity> {
        self.demands.get(&i).copied()
    }

    pub fn terminals(&self) -> VertexSet {
        VertexSet::new(self.pairs.iter().flat_map(|&(s, t)| [s, t]))
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        self.terminals().check_range(n)
    }

    /// Pair index owning terminal `v`.
    pub fn pair_of(&self, v: usize) -> Option<usize> {
        self.pairs.iter().position(|&(s, t)| s == v || t == v)
    }
}

/// Checks the parity-breaking conditions: `m` is indexed exactly over the
/// parity set, every edge lies in `G[A] ∪ G[B]`, and `m_i` avoids the
/// terminals of every pair `j ≠ i` (it may touch its own pair).
pub fn is_parity_breaking(m: &Matching, g: &Graph, p: &Partition, ts: &TerminalSystem) -> bool {
    let within = within_graph(g, p).graph;
    avoids_other_pairs(m, &within, ts)
}

fn avoids_other_pairs(m: &Matching, within: &Graph, ts: &TerminalSystem) -> bool {
    if ts.parity_set().is_empty() {
        return m.is_empty();
    }
    let entries = m.indexed_edges();
    if entries.len() != m.len()
        || !entries
            .iter()
            .map(|(i, _)| *i)
            .eq(ts.parity_set().iter().copied())
    {
        return false;
    }
    entries.iter().all(|&(i, (u, v))| {
        u < within.n()
            && v < within.n()
            && within.has_edge(u, v)
            && ts
                .pairs()
                .iter()
                .enumerate()
                .all(|(j, &(s, t))| j == i || (u != s && u != t && v != s && v != t))
    })
}

/// Whether `m` breaks parity for `pairs` inside `h` itself (the whole of
/// `h` playing the within-parts graph), indexed by all pairs.
pub fn is_parity_breaking_in(m: &Matching, h: &Graph, pairs: &[(usize, usize)]) -> bool {
    let all: BTreeSet<usize> = (0..pairs.len()).collect();
    match TerminalSystem::new(pairs.to_vec(), all) {
        Ok(ts) => avoids_other_pairs(m, h, &ts),
        Err(_) => false,
    }
}

fn check_pairs(h: &Graph, pairs: &[(usize, usize)]) -> Result<TerminalSystem> {
    let ts = TerminalSystem::plain(pairs.to_vec())?;
    ts.check_range(h.n())?;
    Ok(ts)
}

/// One working entry: (caller's pair index, x, y).
type Slot = (usize, usize, usize);

fn slots(pairs: &[(usize, usize)]) -> Vec<Slot> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| (i, x, y))
        .collect()
}

/// Extraction under `τ(h) ≥ 4k − 3` for arbitrary distinct terminals.
///
/// Takes a minimum vertex cover, a non-terminal cover vertex `r` and a
/// neighbor `r'`; if `r'` is a terminal its pair goes last. Then `rr'`
/// serves that pair and the rest recurses on `h` minus that pair and
/// `r, r'`. Indices of the output follow the caller's pair order.
pub fn extract_pbm_4k(h: &Graph, pairs: &[(usize, usize)], budget: &Budget) -> Result<Matching> {
    check_pairs(h, pairs)?;
    let k = pairs.len();
    if k == 0 {
        return Matching::indexed(BTreeMap::new());
    }
    let t = tau(h, budget)?;
    if t + 3 < 4 * k {
        return Err(Error::Precondition(format!(
            "τ(h) = {t} is below 4k−3 = {}",
            4 * k - 3
        )));
    }
    let mut out = BTreeMap::new();
    extract_4k_step(h, slots(pairs), &mut out, budget)?;
    Matching::indexed(out)
}

fn extract_4k_step(
    h: &Graph,
    mut pairs: Vec<Slot>,
    out: &mut BTreeMap<usize, Edge>,
    budget: &Budget,
) -> Result<()> {
    let k = pairs.len();
    if k == 0 {
        return Ok(());
    }
    if k == 1 {
        let e = h
            .edges()
            .next()
            .ok_or_else(|| Error::Precondition("τ ≥ 1 but no edge left".into()))?;
        out.insert(pairs[0].0, e);
        return Ok(());
    }
    let terminals: BTreeSet<usize> = pairs.iter().flat_map(|&(_, x, y)| [x, y]).collect();
    let cover = min_vertex_cover(h, budget)?;
    let r = cover
        .iter()
        .find(|v| !terminals.contains(v))
        .ok_or_else(|| Error::Precondition("every cover vertex is a terminal".into()))?;
    let r2 = h.neighbors(r)[0];
    if let Some(j) = pairs.iter().position(|&(_, x, y)| x == r2 || y == r2) {
        pairs.swap(j, k - 1);
    }
    let (idx, x, y) = pairs.pop().unwrap();
    out.insert(idx, (r, r2));
    let rest = h.without_vertices(&[x, y, r, r2]);
    extract_4k_step(&rest, pairs, out, budget)
}

/// Counters from [`extract_pbm_independent_traced`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    /// Times the τ-critical residue was reached and the exhaustive search
    /// took over. The Erdős–Gallai bound rules this case out.
    pub dead_branch_activations: usize,
    pub steps: Vec<String>,
}

/// Extraction when the `2k` terminals form an independent set and
/// `τ(h) ≥ 2k − 1`.
pub fn extract_pbm_independent(
    h: &Graph,
    pairs: &[(usize, usize)],
    budget: &Budget,
) -> Result<Matching> {
    extract_pbm_independent_traced(h, pairs, budget).map(|(m, _)| m)
}

pub fn extract_pbm_independent_traced(
    h: &Graph,
    pairs: &[(usize, usize)],
    budget: &Budget,
) -> Result<(Matching, ExtractionTrace)> {
    let ts = check_pairs(h, pairs)?;
    let z = ts.terminals();
    for u in z.iter() {
        if let Some(&w) = h.neighbors(u).iter().find(|&&w| z.contains(w)) {
            return Err(Error::Precondition(format!(
                "terminals {u} and {w} are adjacent"
            )));
        }
    }
    let k = pairs.len();
    let mut trace = ExtractionTrace::default();
    if k == 0 {
        return Ok((Matching::indexed(BTreeMap::new())?, trace));
    }
    let t = tau(h, budget)?;
    if t + 1 < 2 * k {
        return Err(Error::Precondition(format!(
            "τ(h) = {t} is below 2k−1 = {}",
            2 * k - 1
        )));
    }
    let mut out = BTreeMap::new();
    independent_step(h, slots(pairs), &mut out, &mut trace, budget)?;
    Ok((Matching::indexed(out)?, trace))
}

fn independent_step(
    h: &Graph,
    mut pairs: Vec<Slot>,
    out: &mut BTreeMap<usize, Edge>,
    trace: &mut ExtractionTrace,
    budget: &Budget,
) -> Result<()> {
    let k = pairs.len();
    if k == 0 {
        return Ok(());
    }
    if k == 1 {
        let e = h
            .edges()
            .next()
            .ok_or_else(|| Error::Precondition("τ ≥ 1 but no edge left".into()))?;
        trace.steps.push(format!("base: {e:?}"));
        out.insert(pairs[0].0, e);
        return Ok(());
    }
    let in_z: BTreeSet<usize> = pairs.iter().flat_map(|&(_, x, y)| [x, y]).collect();
    let outside_edge = h
        .edges()
        .find(|&(u, v)| !in_z.contains(&u) && !in_z.contains(&v));

    // h - Z edgeless: h is bipartite between Z and the rest
    let Some(outside_edge) = outside_edge else {
        let nm = konig_matching(h)?;
        let mut at: BTreeMap<usize, Edge> = BTreeMap::new();
        for &(u, v) in nm.edges() {
            at.insert(u, (u, v));
            at.insert(v, (u, v));
        }
        for &(idx, x, y) in &pairs {
            let e =
                at.get(&x).or_else(|| at.get(&y)).copied().ok_or_else(|| {
                    Error::Precondition(format!("König matching misses pair {idx}"))
                })?;
            out.insert(idx, e);
        }
        trace
            .steps
            .push(format!("König matching of size {}", nm.len()));
        return Ok(());
    };

    // an isolated terminal: serve its pair with an edge at the partner, or
    // with any edge outside Z
    let isolated = pairs.iter().enumerate().find_map(|(j, &(_, x, y))| {
        if h.degree(x) == 0 {
            Some((j, false))
        } else if h.degree(y) == 0 {
            Some((j, true))
        } else {
            None
        }
    });
    if let Some((j, swapped)) = isolated {
        pairs.swap(j, k - 1);
        let (idx, x, y) = pairs.pop().unwrap();
        let (x, y) = if swapped { (y, x) } else { (x, y) };
        let (e, removed) = match h.neighbors(y).first() {
            Some(&u) => ((u, y), vec![u, x, y]),
            None => (outside_edge, vec![outside_edge.0, outside_edge.1, x, y]),
        };
        trace.steps.push(format!("isolated terminal {x}: {e:?}"));
        out.insert(idx, e);
        return independent_step(&h.without_vertices(&removed), pairs, out, trace, budget);
    }

    let t = tau(h, budget)?;
    if t >= 2 * k {
        let (idx, x, y) = pairs.pop().unwrap();
        let w = h.neighbors(x)[0];
        trace.steps.push(format!("τ ≥ 2k: {:?}", (x, w)));
        out.insert(idx, (x, w));
        return independent_step(&h.without_vertices(&[x, y, w]), pairs, out, trace, budget);
    }

    // τ = 2k − 1: strip edges and non-terminal vertices whose deletion keeps τ
    for (u, v) in h.edges() {
        if tau(&h.without_edge(u, v), budget)? == t {
            trace.steps.push(format!("drop edge {u}-{v}"));
            return independent_step(&h.without_edge(u, v), pairs, out, trace, budget);
        }
    }
    for r in 0..h.n() {
        if in_z.contains(&r) || h.degree(r) == 0 {
            continue;
        }
        if tau(&h.without_vertices(&[r]), budget)? == t {
            trace.steps.push(format!("drop vertex {r}"));
            return independent_step(&h.without_vertices(&[r]), pairs, out, trace, budget);
        }
    }
    for j in 0..k {
        let (_, x, y) = pairs[j];
        for (a, b) in [(x, y), (y, x)] {
            if tau(&h.without_vertices(&[a]), budget)? == t {
                let r = h.neighbors(b)[0];
                pairs.swap(j, k - 1);
                let (idx, _, _) = pairs.pop().unwrap();
                trace
                    .steps
                    .push(format!("terminal {a} keeps τ: {:?}", (b, r)));
                out.insert(idx, (b, r));
                return independent_step(
                    &h.without_vertices(&[a, b, r]),
                    pairs,
                    out,
                    trace,
                    budget,
                );
            }
        }
    }

    // τ-critical residue on ≥ 4k−1 vertices with τ = 2k−1 < |V|/2
    trace.dead_branch_activations += 1;
    log::warn!(
        "τ-critical residue reached (k = {k}, τ = {t}) on {h:?}; falling back to exhaustive search"
    );
    let plain: Vec<(usize, usize)> = pairs.iter().map(|&(_, x, y)| (x, y)).collect();
    let everything = Partition::from_sides(&vec![false; h.n()]);
    let ts = TerminalSystem::new(plain, (0..k).collect())?;
    let m = brute_force_pbm(h, &everything, &ts, budget)?.ok_or_else(|| {
        Error::Precondition("no parity-breaking matching exists for the residue".into())
    })?;
    for (j, e) in m.indexed_edges() {
        out.insert(pairs[j].0, e);
    }
    Ok(())
}

/// Exhaustive search for a parity-breaking matching of `ts` inside
/// `G[A] ∪ G[B]`. Edges are tried in lexicographic order per index.
pub fn brute_force_pbm(
    g: &Graph,
    p: &Partition,
    ts: &TerminalSystem,
    budget: &Budget,
) -> Result<Option<Matching>> {
    ts.check_range(g.n())?;
    let within = within_graph(g, p).graph;
    let indices: Vec<usize> = ts.parity_set().iter().copied().collect();
    let candidates: Vec<Vec<Edge>> = indices
        .iter()
        .map(|&i| {
            within
                .edges()
                .filter(|&(u, v)| {
                    ts.pairs()
                        .iter()
                        .enumerate()
                        .all(|(j, &(s, t))| j == i || (u != s && u != t && v != s && v != t))
                })
                .collect()
        })
        .collect();
    let mut meter = budget.meter();
    let mut used = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(indices.len());
    if assign(&candidates, 0, &mut used, &mut chosen, &mut meter)? {
        let by_pair = indices.iter().copied().zip(chosen).collect();
        Ok(Some(Matching::indexed(by_pair)?))
    } else {
        Ok(None)
    }
}

fn assign(
    candidates: &[Vec<Edge>],
    depth: usize,
    used: &mut [bool],
    chosen: &mut Vec<Edge>,
    meter: &mut Meter,
) -> Result<bool> {
    meter.tick()?;
    if depth == candidates.len() {
        return Ok(true);
    }
    for &(u, v) in &candidates[depth] {
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        chosen.push((u, v));
        if assign(candidates, depth + 1, used, chosen, meter)? {
            return Ok(true);
        }
        chosen.pop();
        used[u] = false;
        used[v] = false;
    }
    Ok(false)
}

/// Outcome of checking whether parity-breaking matchings exist uniformly
/// across every nice partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub minimum_covers: usize,
    pub partitions_checked: usize,
    pub partitions_with_pbm: usize,
}

impl EquivalenceReport {
    pub fn uniform(&self) -> bool {
        self.partitions_with_pbm == 0 || self.partitions_with_pbm == self.partitions_checked
    }
}

/// Enumerates every minimum odd cycle cover and every partition it induces
/// (component flips and tie placements included) and records for how many
/// a parity-breaking matching exists.
pub fn nice_partition_equivalence_check(
    g: &Graph,
    ts: &TerminalSystem,
    budget: &Budget,
) -> Result<EquivalenceReport> {
    ts.check_range(g.n())?;
    let covers = all_min_odd_cycle_covers(g, budget)?;
    let mut report = EquivalenceReport {
        minimum_covers: covers.len(),
        partitions_checked: 0,
        partitions_with_pbm: 0,
    };
    for x in &covers {
        for p in induced_partitions(g, x, 1 << 12)? {
            report.partitions_checked += 1;
            if brute_force_pbm(g, &p, ts, budget)?.is_some() {
                report.partitions_with_pbm += 1;
            }
        }
    }
    Ok(report)
}
