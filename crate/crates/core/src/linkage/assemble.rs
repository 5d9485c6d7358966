use std::collections::BTreeSet;

use super::{find_linkage, Linkage};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partitions::NicePartition;
use crate::pbm::{is_parity_breaking, Matching, Parity, TerminalSystem};

/// Default small-cover threshold is `SMALL_COVER_FACTOR * k`.
pub const SMALL_COVER_FACTOR: usize = 8;

/// How pair `i` is routed.
#[derive(Debug, Clone, Copy)]
enum Route {
    /// `s s' .. t' t`
    Natural { s: usize, t: usize },
    /// `s s' .. x' x y y' .. t' t`
    Through {
        s: usize,
        x: usize,
        y: usize,
        t: usize,
    },
    /// `s y y' .. t' t` with `x = s`
    FromSource { s: usize, y: usize, t: usize },
    /// `s s' .. x' x t` with `y = t`
    IntoTarget { s: usize, x: usize, t: usize },
    /// the matching edge is `st`
    Direct { s: usize, t: usize },
}

impl Route {
    /// Base vertices needing a primed neighbor, in the order used below.
    fn bases(self) -> Vec<usize> {
        match self {
            Route::Natural { s, t } => vec![s, t],
            Route::Through { s, x, y, t } => vec![s, x, y, t],
            Route::FromSource { y, t, .. } => vec![y, t],
            Route::IntoTarget { s, x, .. } => vec![s, x],
            Route::Direct { .. } => vec![],
        }
    }
}

/// Builds the demanded paths from a nice partition with a small inducing
/// cover and a parity-breaking matching.
///
/// Each base vertex `z` gets a distinct neighbor `z'` on the other side of
/// the partition, outside the terminals, the matching vertices and the
/// cover; a plain linkage between primed vertices in the remaining graph
/// is then spliced with the terminal and matching edges. Primed neighbors
/// are chosen lexicographically with backtracking.
///
/// `threshold` defaults to `8k`. Returns `None` when no choice of primed
/// neighbors admits the inner linkage.
pub fn assemble_parity_paths(
    g: &Graph,
    np: &NicePartition,
    ts: &TerminalSystem,
    m: &Matching,
    threshold: Option<usize>,
    budget: &Budget,
) -> Result<Option<Linkage>> {
    ts.check_range(g.n())?;
    let p = &np.partition;
    if p.n() != g.n() {
        return Err(Error::InvalidInput(
            "partition does not match the graph".into(),
        ));
    }
    if !is_parity_breaking(m, g, p, ts) {
        return Err(Error::Precondition(
            "matching is not parity breaking for this partition".into(),
        ));
    }
    let cover = &np.inducing_cover.members;
    let threshold = threshold.unwrap_or(SMALL_COVER_FACTOR * ts.k());
    if cover.len() >= threshold {
        return Err(Error::Precondition(format!(
            "cover of size {} is not below the threshold {threshold}",
            cover.len()
        )));
    }

    let mut routes = Vec::with_capacity(ts.k());
    let mut blocked = ts.terminals().union(cover);
    for (i, &(s, t)) in ts.pairs().iter().enumerate() {
        let natural = Parity::of_len(!p.same_side(s, t) as usize);
        let route = match (ts.parity_set().contains(&i), m.edge_for(i)) {
            (true, Some((u, w))) => {
                blocked = blocked.union(&[u, w].into());
                if ts.demand(i).is_some_and(|d| d != natural) {
                    orient(s, t, u, w)
                } else {
                    Route::Natural { s, t }
                }
            }
            _ => Route::Natural { s, t },
        };
        routes.push(route);
    }

    let bases: Vec<usize> = routes.iter().flat_map(|r| r.bases()).collect();
    let candidates: Vec<Vec<usize>> = bases
        .iter()
        .map(|&z| {
            g.neighbors(z)
                .iter()
                .copied()
                .filter(|&w| !blocked.contains(w) && !p.same_side(z, w))
                .collect()
        })
        .collect();
    let inner = g.without_vertices(blocked.as_slice());
    let mut ctx = Assembly {
        g,
        inner: &inner,
        ts,
        routes: &routes,
        candidates: &candidates,
        budget,
        meter: budget.meter(),
        primed: Vec::with_capacity(bases.len()),
        taken: BTreeSet::new(),
    };
    ctx.choose()
}

fn orient(s: usize, t: usize, u: usize, w: usize) -> Route {
    let (x, y) = if u == s || w == t {
        (u, w)
    } else if w == s || u == t {
        (w, u)
    } else {
        (u, w)
    };
    match (x == s, y == t) {
        (false, false) => Route::Through { s, x, y, t },
        (true, false) => Route::FromSource { s, y, t },
        (false, true) => Route::IntoTarget { s, x, t },
        (true, true) => Route::Direct { s, t },
    }
}

struct Assembly<'a> {
    g: &'a Graph,
    inner: &'a Graph,
    ts: &'a TerminalSystem,
    routes: &'a [Route],
    candidates: &'a [Vec<usize>],
    budget: &'a Budget,
    meter: Meter,
    primed: Vec<usize>,
    taken: BTreeSet<usize>,
}

impl Assembly<'_> {
    fn choose(&mut self) -> Result<Option<Linkage>> {
        self.meter.tick()?;
        let depth = self.primed.len();
        if depth == self.candidates.len() {
            return self.link();
        }
        for &w in &self.candidates[depth] {
            if !self.taken.insert(w) {
                continue;
            }
            self.primed.push(w);
            let found = self.choose()?;
            self.primed.pop();
            self.taken.remove(&w);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Inner linkage between primed vertices, then the splice.
    fn link(&mut self) -> Result<Option<Linkage>> {
        let mut next = self.primed.iter().copied();
        let mut ends = Vec::new();
        let mut inner_pairs = Vec::new();
        for route in self.routes {
            let primes: Vec<usize> = route.bases().iter().map(|_| next.next().unwrap()).collect();
            for pair in primes.chunks(2) {
                inner_pairs.push((pair[0], pair[1]));
            }
            ends.push(primes);
        }
        let inner_ts = TerminalSystem::plain(inner_pairs)?;
        let Some(inner) = find_linkage(self.inner, &inner_ts, self.budget)? else {
            return Ok(None);
        };
        let mut pieces = inner.paths.into_iter();
        let mut paths = Vec::with_capacity(self.routes.len());
        for route in self.routes {
            let path = match *route {
                Route::Natural { s, t } => splice(&[&[s], &pieces.next().unwrap(), &[t]]),
                Route::Through { s, x, y, t } => {
                    let first = pieces.next().unwrap();
                    let second = pieces.next().unwrap();
                    splice(&[&[s], &first, &[x, y], &second, &[t]])
                }
                Route::FromSource { s, y, t } => splice(&[&[s, y], &pieces.next().unwrap(), &[t]]),
                Route::IntoTarget { s, x, t } => splice(&[&[s], &pieces.next().unwrap(), &[x, t]]),
                Route::Direct { s, t } => vec![s, t],
            };
            paths.push(path);
        }
        let linkage = Linkage { paths };
        match linkage.validate(self.g, self.ts) {
            Ok(()) => Ok(Some(linkage)),
            Err(why) => {
                log::warn!("assembled paths rejected: {why}");
                Ok(None)
            }
        }
    }
}

fn splice(parts: &[&[usize]]) -> Vec<usize> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}
