use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::{mask_from, mask_iter, Graph, Mask, VertexSet};

/// A path meeting `Z` exactly in its two ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZPath {
    pub vertices: Vec<usize>,
}

impl ZPath {
    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 0
    }

    pub fn is_valid(&self, g: &Graph, z: &VertexSet) -> bool {
        let v = &self.vertices;
        if v.len() < 2 || v.iter().any(|&u| u >= g.n()) {
            return false;
        }
        let mut sorted = v.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == v.len()
            && v.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && z.contains(v[0])
            && z.contains(v[v.len() - 1])
            && v[1..v.len() - 1].iter().all(|&u| !z.contains(u))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZPathOutcome {
    /// `ell` disjoint odd Z-paths.
    Packing { paths: Vec<ZPath> },
    /// A minimum set meeting every odd Z-path, of size at most `2ell - 2`.
    Cover { hitting_set: VertexSet },
    /// Neither side reached its bound.
    Violation {
        max_packing: usize,
        min_hitting_set: VertexSet,
    },
}

/// `ell` disjoint odd Z-paths, or `None`. Each path is anchored at its
/// smaller end and anchors increase along the packing.
pub fn odd_z_path_packing(
    g: &Graph,
    z: &VertexSet,
    ell: usize,
    budget: &Budget,
) -> Result<Option<Vec<ZPath>>> {
    g.require_mask()?;
    z.check_range(g.n())?;
    let mut meter = budget.meter();
    packing_in(g, z.to_mask(), g.full_mask(), ell, &mut meter)
}

/// Packing first; otherwise a minimum hitting set, compared with `2ell - 2`.
pub fn odd_z_path_dichotomy(
    g: &Graph,
    z: &VertexSet,
    ell: usize,
    budget: &Budget,
) -> Result<ZPathOutcome> {
    g.require_mask()?;
    z.check_range(g.n())?;
    let mut meter = budget.meter();
    let zm = z.to_mask();
    let all = g.full_mask();
    if ell > 0 {
        if let Some(paths) = packing_in(g, zm, all, ell, &mut meter)? {
            return Ok(ZPathOutcome::Packing { paths });
        }
    }
    let mut size = 0;
    let hitting = loop {
        if let Some(x) = hit(g, zm, all, size, &mut meter)? {
            break x;
        }
        size += 1;
    };
    let hitting_set = VertexSet::from_mask(hitting);
    if ell == 0 || hitting_set.len() + 2 <= 2 * ell {
        return Ok(ZPathOutcome::Cover { hitting_set });
    }
    let mut max_packing = 0;
    while packing_in(g, zm, all, max_packing + 1, &mut meter)?.is_some() {
        max_packing += 1;
    }
    log::warn!("odd Z-path dichotomy violated on {g:?} with ell = {ell}");
    Ok(ZPathOutcome::Violation {
        max_packing,
        min_hitting_set: hitting_set,
    })
}

/// A set of at most `k` vertices meeting every odd Z-path of `G[alive]`,
/// branching on the vertices of a found path.
fn hit(g: &Graph, z: Mask, alive: Mask, k: usize, meter: &mut Meter) -> Result<Option<Mask>> {
    meter.tick()?;
    let Some(paths) = packing_in(g, z, alive, 1, meter)? else {
        return Ok(Some(0));
    };
    if k == 0 {
        return Ok(None);
    }
    for &v in &paths[0].vertices {
        if let Some(x) = hit(g, z, alive & !(1 << v), k - 1, meter)? {
            return Ok(Some(x | 1 << v));
        }
    }
    Ok(None)
}

fn packing_in(
    g: &Graph,
    z: Mask,
    alive: Mask,
    ell: usize,
    meter: &mut Meter,
) -> Result<Option<Vec<ZPath>>> {
    let mut search = ZSearch {
        g,
        z,
        ell,
        failed_walks: HashSet::new(),
        failed_starts: HashSet::new(),
        meter,
        paths: Vec::new(),
    };
    if search.next_path(!alive & g.full_mask(), 0)? {
        Ok(Some(
            search
                .paths
                .into_iter()
                .map(|vertices| ZPath { vertices })
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

struct ZSearch<'a> {
    g: &'a Graph,
    z: Mask,
    ell: usize,
    failed_walks: HashSet<(Mask, u32)>,
    failed_starts: HashSet<(Mask, u32)>,
    meter: &'a mut Meter,
    paths: Vec<Vec<usize>>,
}

impl ZSearch<'_> {
    fn next_path(&mut self, used: Mask, min_anchor: usize) -> Result<bool> {
        if self.paths.len() == self.ell {
            return Ok(true);
        }
        self.meter.tick()?;
        let key = (used, (self.paths.len() as u32) << 16 | min_anchor as u32);
        if self.failed_starts.contains(&key) {
            return Ok(false);
        }
        for a in mask_iter(self.z & !used & mask_from(min_anchor)) {
            self.paths.push(vec![a]);
            if self.walk(used | 1 << a, a, a, 0)? {
                return Ok(true);
            }
            self.paths.pop();
        }
        self.failed_starts.insert(key);
        Ok(false)
    }

    fn walk(&mut self, used: Mask, anchor: usize, v: usize, parity: u32) -> Result<bool> {
        self.meter.tick()?;
        let key = (
            used,
            (self.paths.len() as u32) << 16 | (anchor as u32) << 9 | (v as u32) << 1 | parity,
        );
        if self.failed_walks.contains(&key) {
            return Ok(false);
        }
        let ends = self.z & !used & mask_from(anchor + 1);
        let interior = self.g.full_mask() & !used & !self.z;
        let mut reach = self.g.reach(v, interior);
        let mut touch: Mask = 0;
        for u in mask_iter(reach) {
            touch |= self.g.nbr_mask(u);
        }
        reach |= touch;
        if reach & ends == 0 {
            self.failed_walks.insert(key);
            return Ok(false);
        }
        let g = self.g;
        let current = self.paths.len() - 1;
        for &w in g.neighbors(v) {
            let bit = 1 << w;
            if used & bit != 0 {
                continue;
            }
            if self.z & bit != 0 {
                if ends & bit == 0 || parity != 0 {
                    continue;
                }
                self.paths[current].push(w);
                if self.next_path(used | bit, anchor + 1)? {
                    return Ok(true);
                }
                self.paths[current].pop();
            } else {
                self.paths[current].push(w);
                if self.walk(used | bit, anchor, w, parity ^ 1)? {
                    return Ok(true);
                }
                self.paths[current].pop();
            }
        }
        self.failed_walks.insert(key);
        Ok(false)
    }
}
