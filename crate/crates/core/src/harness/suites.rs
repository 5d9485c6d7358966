//! The registered property suites. Each suite turns into a list of jobs:
//! batches of enumerated graphs, or single sampled or constructed
//! instances whose seed is logged in the record.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::enumerate::{all_graph_keys, graph_from_key};
use super::generators::{gen_non_parity_linked, gen_tight_cover, sample_random, InstanceSpec};
use super::sweep::{Counterexample, Job, JobOutcome, SuiteConfig, SUITES};
use crate::budget::Budget;
use crate::covers::min_odd_cycle_cover;
use crate::error::{Error, Result};
use crate::graph::{
    find_odd_s_cycle, is_bipartite, vertex_connectivity, Graph, GraphBuilder, VertexSet,
};
use crate::linkage::{find_parity_linkage, odd_z_path_dichotomy, ZPathOutcome};
use crate::packing::{
    dichotomy_bipartite_cover, dichotomy_s_cycles, pack_odd_s_cycles, twin_linkage_to_packing,
    twin_reduction, Outcome,
};
use crate::partitions::{
    is_tau_critical, konig_matching, maximal_matching_cover_bound, nice_partition, tau,
    within_graph, CoverCheck, Partition,
};
use crate::pbm::{
    brute_force_pbm, extract_pbm_4k, extract_pbm_independent_traced, is_parity_breaking_in,
    TerminalSystem,
};

const BATCH: usize = 512;

struct Defaults {
    max_n: usize,
    samples: usize,
    seed: u64,
}

fn defaults(suite: &str) -> Defaults {
    let (max_n, samples) = match suite {
        "observation2" => (8, 0),
        "geelen-dichotomy" => (9, 2000),
        "pbm-extractors" => (8, 3000),
        "erdos-gallai" => (9, 0),
        "twin-reduction" => (8, 0),
        "konig" => (9, 10_000),
        "tight-examples" => (8, 0),
        "dense-k1" => (64, 100),
        _ => (0, 0),
    };
    Defaults {
        max_n,
        samples,
        seed: 0x5eed,
    }
}

/// Enumerated keys per `n`, shared by every suite in the process.
fn keys(n: usize) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<Vec<Option<Arc<Vec<u64>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![None; 12]));
    if let Some(k) = cache.lock().unwrap()[n].clone() {
        return k;
    }
    let k = Arc::new(all_graph_keys(n));
    cache.lock().unwrap()[n] = Some(k.clone());
    k
}

/// Seed of sample `i` at size `n`, so that every sample can be rerun alone.
fn derive_seed(base: u64, n: usize, i: usize) -> u64 {
    let mut x = base ^ (n as u64) << 32 ^ i as u64;
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ x >> 30).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ x >> 27).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ x >> 31
}

type Check = dyn Fn(&Graph, u64, &Budget, &mut JobOutcome) -> Result<()> + Send + Sync;

/// Jobs over all graphs with `lo..=hi` vertices, `BATCH` graphs per job.
/// Each graph gets a seed derived from its position.
fn enumerated(suite: &str, lo: usize, hi: usize, seed: u64, check: Arc<Check>) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in lo..=hi {
        let all = keys(n);
        for (b, chunk) in all.chunks(BATCH).enumerate() {
            let first = b * BATCH;
            let count = chunk.len();
            let check = check.clone();
            let all = all.clone();
            jobs.push(Job {
                id: format!("{suite}/n{n}/batch{b:04}"),
                order: (n, b),
                instance: json!({"kind": "enumerated", "n": n, "first": first, "count": count, "seed": seed}),
                run: Box::new(move |budget| {
                    let mut out = JobOutcome::default();
                    for (i, &key) in all[first..first + count].iter().enumerate() {
                        let g = graph_from_key(n, key);
                        match check(&g, derive_seed(seed, n, first + i), budget, &mut out) {
                            Ok(()) => {}
                            Err(Error::BudgetExhausted { .. }) => out.exhausted += 1,
                            Err(e) => return Err(e),
                        }
                    }
                    Ok(out)
                }),
            });
        }
    }
    jobs
}

/// `samples` jobs per `n` in `lo..=hi`, one sampled instance each.
fn sampled(
    suite: &str,
    lo: usize,
    hi: usize,
    samples: usize,
    seed: u64,
    check: Arc<dyn Fn(usize, u64, &Budget, &mut JobOutcome) -> Result<()> + Send + Sync>,
) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in lo..=hi {
        for i in 0..samples {
            let s = derive_seed(seed, n, i);
            let check = check.clone();
            jobs.push(Job {
                id: format!("{suite}/n{n}/sample{i:05}"),
                order: (n, 1 << 20 | i),
                instance: json!({"kind": "sampled", "n": n, "seed": s}),
                run: Box::new(move |budget| {
                    let mut out = JobOutcome::default();
                    match check(n, s, budget, &mut out) {
                        Ok(()) => {}
                        Err(Error::BudgetExhausted { .. }) => out.exhausted += 1,
                        Err(e) => return Err(e),
                    }
                    Ok(out)
                }),
            });
        }
    }
    jobs
}

pub fn jobs(suite: &str, cfg: &SuiteConfig) -> Result<Vec<Job>> {
    if !SUITES.contains(&suite) {
        return Err(Error::InvalidInput(format!(
            "unknown suite {suite:?}; known: {}",
            SUITES.join(", ")
        )));
    }
    let d = defaults(suite);
    let max_n = cfg.max_n.unwrap_or(d.max_n);
    let samples = cfg.samples.unwrap_or(d.samples);
    let seed = cfg.seed.unwrap_or(d.seed);
    let limit = |n: usize| -> Result<usize> {
        if n > 11 {
            return Err(Error::InvalidInput(format!(
                "exhaustive enumeration stops at 11 vertices, got {n}"
            )));
        }
        Ok(n)
    };
    Ok(match suite {
        "observation2" => enumerated(suite, 1, limit(max_n)?, seed, Arc::new(observation2)),
        "geelen-dichotomy" => {
            let mut jobs = enumerated(suite, 1, limit(max_n)?, seed, Arc::new(geelen_graph));
            jobs.extend(sampled(
                suite,
                max_n + 1,
                max_n + 1,
                samples,
                seed,
                Arc::new(|n, s, b: &Budget, out: &mut JobOutcome| {
                    let g = sample_random(&InstanceSpec::RandomGnp { n, p: 0.5, seed: s })?;
                    geelen_graph(&g, s, b, out)
                }),
            ));
            jobs
        }
        "pbm-extractors" => {
            let mut jobs = enumerated(suite, 1, limit(max_n)?, seed, Arc::new(pbm_all_systems));
            jobs.extend(sampled(
                suite,
                max_n + 1,
                (max_n + 2).min(9).max(max_n + 1),
                samples,
                seed,
                Arc::new(pbm_sample),
            ));
            jobs
        }
        "erdos-gallai" => enumerated(suite, 1, limit(max_n)?, seed, Arc::new(erdos_gallai)),
        "twin-reduction" => enumerated(suite, 1, limit(max_n)?, seed, Arc::new(twin_equivalence)),
        "konig" => {
            let mut jobs = enumerated(suite, 1, limit(max_n)?, seed, Arc::new(konig_graph));
            jobs.extend(sampled(
                suite,
                max_n + 1,
                12.max(max_n + 1),
                samples,
                seed,
                Arc::new(konig_sample),
            ));
            jobs
        }
        "tight-examples" => tight_jobs(max_n),
        "dense-k1" => {
            let hi = max_n.clamp(51, 64);
            let mut jobs = sampled(
                suite,
                51,
                51,
                samples,
                seed,
                Arc::new(move |_, s, b: &Budget, out: &mut JobOutcome| {
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    let n = rng.gen_range(51..=hi);
                    dense_k1(n, s, b, out)
                }),
            );
            for j in &mut jobs {
                j.instance["n"] = json!(format!("51..={hi}"));
            }
            jobs
        }
        _ => unreachable!(),
    })
}

fn observation2(g: &Graph, _: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    if !g.is_connected() {
        return Ok(());
    }
    out.checked += 1;
    let x = min_odd_cycle_cover(g, budget)?;
    let np = nice_partition(g, &x, CoverCheck::Trusted, budget)?;
    let t = tau(&within_graph(g, &np.partition).graph, budget)?;
    if t != x.members.len() {
        out.counterexamples.push(Counterexample::new(
            g,
            json!({"cover": x.members, "tau_within": t}),
        ));
    }
    Ok(())
}

/// Does `g - removed` contain an odd path meeting `z` exactly in its ends?
/// Plain DFS over simple paths; independent of the packing search.
fn odd_z_path_exists(g: &Graph, z: &VertexSet, removed: &VertexSet) -> bool {
    fn dfs(g: &Graph, z: &VertexSet, on: &mut [bool], start: usize, v: usize, len: usize) -> bool {
        for &w in g.neighbors(v) {
            if on[w] {
                continue;
            }
            if z.contains(w) {
                if w != start && len % 2 == 0 {
                    return true;
                }
                continue;
            }
            on[w] = true;
            let found = dfs(g, z, on, start, w, len + 1);
            on[w] = false;
            if found {
                return true;
            }
        }
        false
    }
    let mut on = removed.indicator(g.n());
    for a in z.iter().filter(|&a| !removed.contains(a)) {
        on[a] = true;
        let found = dfs(g, z, &mut on, a, a, 0);
        on[a] = false;
        if found {
            return true;
        }
    }
    false
}

fn geelen_graph(g: &Graph, seed: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: VertexSet = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
    for ell in 1..=2 {
        out.checked += 1;
        let verdict = odd_z_path_dichotomy(g, &z, ell, budget)?;
        let ok = match &verdict {
            ZPathOutcome::Packing { paths } => {
                out.bump("packings", 1);
                let mut seen = BTreeSet::new();
                paths.len() == ell
                    && paths.iter().all(|p| p.is_valid(g, &z) && p.is_odd())
                    && paths
                        .iter()
                        .flat_map(|p| p.vertices.iter())
                        .all(|&v| seen.insert(v))
            }
            ZPathOutcome::Cover { hitting_set } => {
                out.bump("covers", 1);
                hitting_set.len() + 2 <= 2 * ell && !odd_z_path_exists(g, &z, hitting_set)
            }
            ZPathOutcome::Violation { .. } => false,
        };
        if !ok {
            out.counterexamples.push(Counterexample::new(
                g,
                json!({"z": z, "ell": ell, "verdict": verdict}),
            ));
        }
    }
    Ok(())
}

/// Every unordered choice of `k` disjoint unordered pairs, in a fixed order.
fn pair_systems(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        free: &mut Vec<bool>,
        k: usize,
        min_s: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let n = free.len();
        for s in min_s..n {
            if !free[s] {
                continue;
            }
            free[s] = false;
            for t in s + 1..n {
                if !free[t] {
                    continue;
                }
                free[t] = false;
                cur.push((s, t));
                rec(free, k, s + 1, cur, out);
                cur.pop();
                free[t] = true;
            }
            free[s] = true;
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![true; n], k, 0, &mut Vec::new(), &mut out);
    out
}

fn terminals_independent(g: &Graph, pairs: &[(usize, usize)]) -> bool {
    let z: Vec<usize> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
    z.iter()
        .enumerate()
        .all(|(i, &u)| z[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Runs both extractors on one system where their hypotheses hold, checks
/// the matchings, and compares with the exhaustive search.
fn pbm_system(
    g: &Graph,
    t: usize,
    pairs: &[(usize, usize)],
    budget: &Budget,
    out: &mut JobOutcome,
) -> Result<()> {
    let k = pairs.len();
    let whole = Partition::from_sides(&vec![false; g.n()]);
    let ts = TerminalSystem::new(pairs.to_vec(), (0..k).collect())?;
    let mut brute = None;
    let fail = |which: &str, detail: serde_json::Value, out: &mut JobOutcome| {
        out.counterexamples.push(Counterexample::new(
            g,
            json!({"extractor": which, "pairs": pairs, "detail": detail}),
        ));
    };
    if t + 3 >= 4 * k {
        out.checked += 1;
        out.bump("4k_cases", 1);
        match extract_pbm_4k(g, pairs, budget) {
            Ok(m) if is_parity_breaking_in(&m, g, pairs) => {}
            Ok(m) => fail("4k", json!({"matching": m}), out),
            Err(Error::BudgetExhausted { nodes }) => return Err(Error::BudgetExhausted { nodes }),
            Err(e) => fail("4k", json!(e.to_string()), out),
        }
        brute = Some(brute_force_pbm(g, &whole, &ts, budget)?.is_some());
    }
    if t + 1 >= 2 * k && terminals_independent(g, pairs) {
        out.checked += 1;
        out.bump("independent_cases", 1);
        match extract_pbm_independent_traced(g, pairs, budget) {
            Ok((m, trace)) => {
                out.bump(
                    "dead_branch_activations",
                    trace.dead_branch_activations as u64,
                );
                if trace.dead_branch_activations > 0 || !is_parity_breaking_in(&m, g, pairs) {
                    fail("independent", json!({"matching": m, "trace": trace}), out);
                }
            }
            Err(Error::BudgetExhausted { nodes }) => return Err(Error::BudgetExhausted { nodes }),
            Err(e) => fail("independent", json!(e.to_string()), out),
        }
        if brute.is_none() {
            brute = Some(brute_force_pbm(g, &whole, &ts, budget)?.is_some());
        }
    }
    if brute == Some(false) {
        fail(
            "brute-force",
            json!("no parity-breaking matching exists"),
            out,
        );
    }
    Ok(())
}

fn pbm_all_systems(g: &Graph, _: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    let t = tau(g, budget)?;
    for k in 1..=3 {
        if 2 * k > g.n() || t + 1 < 2 * k {
            continue;
        }
        for pairs in pair_systems(g.n(), k) {
            pbm_system(g, t, &pairs, budget, out)?;
        }
    }
    Ok(())
}

/// A random graph and one random system per `k`, with the terminals made
/// independent half of the time.
fn pbm_sample(n: usize, seed: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.3..0.95);
    let g = sample_random(&InstanceSpec::RandomGnp { n, p, seed })?;
    for k in 1..=3 {
        if 2 * k > n {
            continue;
        }
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = (0..k).map(|i| (vs[2 * i], vs[2 * i + 1])).collect();
        let h = if rng.gen_bool(0.5) {
            let z: BTreeSet<usize> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
            let mut b = GraphBuilder::new(n);
            for (u, v) in g.edges() {
                if !(z.contains(&u) && z.contains(&v)) {
                    b.add_edge(u, v);
                }
            }
            b.build()
        } else {
            g.clone()
        };
        let t = tau(&h, budget)?;
        pbm_system(&h, t, &pairs, budget, out)?;
    }
    Ok(())
}

fn erdos_gallai(g: &Graph, _: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    if g.n() == 0 || g.min_degree() == 0 {
        return Ok(());
    }
    out.checked += 1;
    if !is_tau_critical(g, budget)? {
        return Ok(());
    }
    out.bump("tau_critical", 1);
    let t = tau(g, budget)?;
    if 2 * t < g.n() {
        out.counterexamples
            .push(Counterexample::new(g, json!({"tau": t})));
    }
    Ok(())
}

fn twin_equivalence(g: &Graph, _: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    for v in 0..g.n() {
        out.checked += 1;
        let s = VertexSet::from([v]);
        let direct = find_odd_s_cycle(g, &s).is_some();
        let (h, ts) = twin_reduction(g, &s)?;
        let linkage = find_parity_linkage(&h, &ts, budget)?;
        let back_ok = match &linkage {
            Some(l) => twin_linkage_to_packing(g, l)
                .map(|p| p.len() == 1 && p.validate(g, &s).is_ok())
                .unwrap_or(false),
            None => true,
        };
        if direct != linkage.is_some() || !back_ok {
            out.counterexamples.push(Counterexample::new(
                g,
                json!({"vertex": v, "odd_cycle": direct, "linkage": linkage.is_some(), "maps_back": back_ok}),
            ));
        }
    }
    Ok(())
}

fn konig_graph(g: &Graph, _: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    out.checked += 1;
    let t = tau(g, budget)?;
    let (m, _) = maximal_matching_cover_bound(g);
    if t > 2 * m.len() {
        out.counterexamples.push(Counterexample::new(
            g,
            json!({"tau": t, "greedy_matching": m.len()}),
        ));
    }
    if is_bipartite(g).is_some() {
        out.bump("bipartite", 1);
        let nu = konig_matching(g)?;
        if nu.len() != t || !nu.is_matching_in(g) {
            out.counterexamples
                .push(Counterexample::new(g, json!({"tau": t, "nu": nu.len()})));
        }
    }
    Ok(())
}

/// Alternates Gnp samples with random bipartite graphs.
fn konig_sample(n: usize, seed: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.05..0.95);
    let g = if seed & 1 == 0 {
        sample_random(&InstanceSpec::RandomGnp { n, p, seed })?
    } else {
        let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.gen_bool(p) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    };
    konig_graph(&g, seed, budget, out)
}

fn tight_jobs(max_side: usize) -> Vec<Job> {
    let mut jobs = Vec::new();
    let side = max_side.max(4);
    jobs.push(Job {
        id: format!("tight-examples/non-parity-linked/k2/side{side}"),
        order: (0, 0),
        instance: json!({"family": "nonParityLinked", "k": 2, "side": side}),
        run: Box::new(move |budget| {
            let mut out = JobOutcome::default();
            out.checked += 1;
            let (g, ts) = gen_non_parity_linked(2, side)?;
            let oct = min_odd_cycle_cover(&g, budget)?.members.len();
            let linkage = find_parity_linkage(&g, &ts, budget)?;
            if oct != 4 || linkage.is_some() {
                out.counterexamples.push(Counterexample::new(
                    &g,
                    json!({"oct": oct, "linkage": linkage}),
                ));
            }
            Ok(out)
        }),
    });
    for (i, tau_s) in [1usize, 2].into_iter().enumerate() {
        for (j, side) in [7usize, side.max(7)]
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
        {
            jobs.push(Job {
                id: format!("tight-examples/tight-cover/k2/tau{tau_s}/side{side}"),
                order: (1 + i, j),
                instance: json!({"family": "tightCover", "k": 2, "tau": tau_s, "side": side}),
                run: Box::new(move |budget| {
                    let mut out = JobOutcome::default();
                    out.checked += 1;
                    let (g, s) = gen_tight_cover(2, tau_s, side)?;
                    let t = tau(&g.induced(s.as_slice()).graph, budget)?;
                    let packing = pack_odd_s_cycles(&g, &s, 2, budget)?;
                    let oct = min_odd_cycle_cover(&g, budget)?.members.len();
                    if t + 1 != tau_s || packing.is_some() || oct != 2 + t {
                        out.counterexamples.push(Counterexample::new(
                            &g,
                            json!({"tau_s": t, "packing": packing, "oct": oct}),
                        ));
                    }
                    Ok(out)
                }),
            });
        }
    }
    jobs
}

/// One odd S-cycle or a certificate that there is none, from both drivers.
fn dense_k1(n: usize, seed: u64, budget: &Budget, out: &mut JobOutcome) -> Result<()> {
    let g = sample_random(&InstanceSpec::RandomDense {
        n,
        connectivity: 50,
        seed,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let size = rng.gen_range(1..=n);
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(&mut rng);
    let s: VertexSet = vs[..size].iter().copied().collect();
    out.checked += 1;
    let kappa = vertex_connectivity(&g);
    let a = dichotomy_s_cycles(&g, &s, 1, budget)?;
    let b = dichotomy_bipartite_cover(&g, &s, 1, budget)?;
    let cover_ok = |r: &crate::packing::DichotomyResult| match &r.outcome {
        Outcome::Packing(_) => true,
        Outcome::SCycleCover(c) => c.members.is_empty(),
        Outcome::BipartiteCover(c) => c.members.is_empty(),
    };
    if kappa < 50
        || !a.verify(&g, &s, 1)
        || !b.verify(&g, &s, 1)
        || !a.bound_met
        || !b.bound_met
        || !cover_ok(&a)
        || !cover_ok(&b)
    {
        out.counterexamples.push(Counterexample::new(
            &g,
            json!({"s": s, "connectivity": kappa, "s_cycles": a, "bipartite": b}),
        ));
    }
    out.bump(if a.is_packing() { "packings" } else { "covers" }, 1);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_systems_counts() {
        // C(n, 2k) (2k)! / (2^k k!)
        assert_eq!(pair_systems(4, 1).len(), 6);
        assert_eq!(pair_systems(4, 2).len(), 3);
        assert_eq!(pair_systems(6, 3).len(), 15);
        assert_eq!(pair_systems(7, 2).len(), 105);
    }

    #[test]
    fn odd_z_dfs_small_cases() {
        let g = Graph::cycle(5);
        let z: VertexSet = [0, 2].into();
        assert!(odd_z_path_exists(&g, &z, &VertexSet::default()));
        assert!(!odd_z_path_exists(&g, &z, &[4].into()));
        assert!(!odd_z_path_exists(
            &Graph::path(3),
            &[0, 2].into(),
            &VertexSet::default()
        ));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 8, 0), derive_seed(1, 8, 1));
        assert_ne!(derive_seed(1, 8, 0), derive_seed(1, 9, 0));
    }
}
