//! Disjoint path systems: exhaustive linkage and parity-linkage search,
//! path assembly from a parity-breaking matching, dense highly connected
//! subgraphs, and the odd Z-path pack-or-hit dichotomy.

mod assemble;
mod dense;
mod zpaths;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::bipartite::component_sides;
use crate::graph::{Graph, Mask};
use crate::pbm::{Parity, TerminalSystem};

pub use assemble::{assemble_parity_paths, SMALL_COVER_FACTOR};
pub use dense::{dense_subgraph, is_dense_enough};
pub use zpaths::{odd_z_path_dichotomy, odd_z_path_packing, ZPath, ZPathOutcome};

/// Vertex-disjoint paths, the `i`-th running from `s_i` to `t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linkage {
    pub paths: Vec<Vec<usize>>,
}

impl Linkage {
    pub fn parities(&self) -> Vec<Parity> {
        self.paths
            .iter()
            .map(|p| Parity::of_len(p.len().saturating_sub(1)))
            .collect()
    }

    /// Checks endpoints, adjacency, disjointness and every demanded parity.
    pub fn validate(&self, g: &Graph, ts: &TerminalSystem) -> std::result::Result<(), String> {
        if self.paths.len() != ts.k() {
            return Err(format!("{} paths for {} pairs", self.paths.len(), ts.k()));
        }
        let mut seen = vec![false; g.n()];
        for (i, (path, &(s, t))) in self.paths.iter().zip(ts.pairs()).enumerate() {
            if path.first() != Some(&s) || path.last() != Some(&t) || path.len() < 2 {
                return Err(format!("path {i} does not join {s} and {t}"));
            }
            for &v in path {
                if v >= g.n() {
                    return Err(format!("path {i} leaves the graph at {v}"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(format!("vertex {v} used twice"));
                }
            }
            if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(format!("path {i} uses non-edge {}-{}", w[0], w[1]));
            }
            if let Some(want) = ts.demand(i) {
                if Parity::of_len(path.len() - 1) != want {
                    return Err(format!("path {i} has the wrong parity"));
                }
            }
        }
        Ok(())
    }
}

/// Disjoint `s_i`–`t_i` paths for all pairs, ignoring parity demands.
pub fn find_linkage(g: &Graph, ts: &TerminalSystem, budget: &Budget) -> Result<Option<Linkage>> {
    search(g, ts, false, budget)
}

/// Disjoint `s_i`–`t_i` paths whose lengths meet every demanded parity.
pub fn find_parity_linkage(
    g: &Graph,
    ts: &TerminalSystem,
    budget: &Budget,
) -> Result<Option<Linkage>> {
    search(g, ts, true, budget)
}

fn search(
    g: &Graph,
    ts: &TerminalSystem,
    with_parity: bool,
    budget: &Budget,
) -> Result<Option<Linkage>> {
    g.require_mask()?;
    ts.check_range(g.n())?;
    let k = ts.k();
    // fail-first: pairs whose source has the fewest free neighbors go first
    let terminals = ts.terminals().to_mask();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| {
        let (s, t) = ts.pairs()[i];
        let free = g.nbr_mask(s) & (!terminals | 1 << t);
        (free.count_ones(), i)
    });
    let mut engine = PathSearch {
        g,
        pairs: order.iter().map(|&i| ts.pairs()[i]).collect(),
        demands: order
            .iter()
            .map(|&i| if with_parity { ts.demand(i) } else { None })
            .collect(),
        failed: HashSet::new(),
        meter: budget.meter(),
        paths: Vec::new(),
    };
    if !engine.start(terminals, 0)? {
        return Ok(None);
    }
    let mut paths = vec![Vec::new(); k];
    for (slot, path) in order.into_iter().zip(engine.paths) {
        paths[slot] = path;
    }
    Ok(Some(Linkage { paths }))
}

struct PathSearch<'a> {
    g: &'a Graph,
    pairs: Vec<(usize, usize)>,
    demands: Vec<Option<Parity>>,
    failed: HashSet<(Mask, u32)>,
    meter: Meter,
    paths: Vec<Vec<usize>>,
}

impl PathSearch<'_> {
    fn start(&mut self, used: Mask, j: usize) -> Result<bool> {
        if j == self.pairs.len() {
            return Ok(true);
        }
        let (s, t) = self.pairs[j];
        // every later pair must still be connectable
        let free = self.g.full_mask() & !used;
        for &(a, b) in &self.pairs[j..] {
            if self.g.reach(a, free | 1 << b) >> b & 1 == 0 {
                return Ok(false);
            }
        }
        self.paths.push(vec![s]);
        if self.extend(used, j, s, 0, t)? {
            return Ok(true);
        }
        self.paths.pop();
        Ok(false)
    }

    fn extend(&mut self, used: Mask, j: usize, v: usize, parity: u32, t: usize) -> Result<bool> {
        self.meter.tick()?;
        let key = (used, (j as u32) << 9 | (v as u32) << 1 | parity);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let free = self.g.full_mask() & !used;
        let reachable = self.g.reach(v, free | 1 << t);
        if reachable >> t & 1 == 0 {
            self.failed.insert(key);
            return Ok(false);
        }
        let want = self.demands[j].map(|p| (p == Parity::Odd) as u32);
        if let Some(want) = want {
            if let Some((_, odd_side)) = component_sides(self.g, v, free | 1 << t) {
                // every v-t path in a bipartite component has fixed parity
                if parity ^ (odd_side >> t & 1) as u32 != want {
                    self.failed.insert(key);
                    return Ok(false);
                }
            }
        }
        let g = self.g;
        for &w in g.neighbors(v) {
            if w == t {
                if want.is_some_and(|p| p != parity ^ 1) {
                    continue;
                }
                self.paths[j].push(t);
                if self.start(used, j + 1)? {
                    return Ok(true);
                }
                self.paths[j].pop();
            } else if used >> w & 1 == 0 {
                self.paths[j].push(w);
                if self.extend(used | 1 << w, j, w, parity ^ 1, t)? {
                    return Ok(true);
                }
                self.paths[j].pop();
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn single_pair_on_connected_graph() {
        let g = Graph::path(5);
        let ts = TerminalSystem::plain(vec![(0, 4)]).unwrap();
        let l = find_linkage(&g, &ts, &b()).unwrap().unwrap();
        assert_eq!(l.paths, vec![vec![0, 1, 2, 3, 4]]);
        assert!(l.validate(&g, &ts).is_ok());
    }

    #[test]
    fn crossing_pairs_on_c4() {
        let ts = TerminalSystem::plain(vec![(0, 2), (1, 3)]).unwrap();
        assert!(find_linkage(&Graph::cycle(4), &ts, &b()).unwrap().is_none());
    }

    #[test]
    fn k6_is_two_linked() {
        let g = Graph::complete(6);
        let ts = TerminalSystem::plain(vec![(0, 5), (1, 2)]).unwrap();
        let l = find_linkage(&g, &ts, &b()).unwrap().unwrap();
        assert!(l.validate(&g, &ts).is_ok());
    }

    #[test]
    fn parity_is_forced_on_bipartite_graphs() {
        let g = Graph::cycle(6);
        let ts = TerminalSystem::with_parities(vec![(0, 2)], vec![Parity::Odd]).unwrap();
        assert!(find_parity_linkage(&g, &ts, &b()).unwrap().is_none());
        let ts = TerminalSystem::with_parities(vec![(0, 2)], vec![Parity::Even]).unwrap();
        assert!(find_parity_linkage(&g, &ts, &b()).unwrap().is_some());
    }

    #[test]
    fn odd_cycle_gives_both_parities() {
        let g = Graph::cycle(5);
        for p in [Parity::Odd, Parity::Even] {
            let ts = TerminalSystem::with_parities(vec![(0, 2)], vec![p]).unwrap();
            let l = find_parity_linkage(&g, &ts, &b()).unwrap().unwrap();
            assert_eq!(l.parities(), vec![p]);
            assert!(l.validate(&g, &ts).is_ok());
        }
    }

    #[test]
    fn validator_rejects_shared_vertices() {
        let g = Graph::complete(4);
        let ts = TerminalSystem::plain(vec![(0, 1), (2, 3)]).unwrap();
        let l = Linkage {
            paths: vec![vec![0, 2, 1], vec![2, 3]],
        };
        assert!(l.validate(&g, &ts).is_err());
    }
}
