mod common;

use std::collections::BTreeSet;

use common::*;
use oddpack::covers::min_odd_cycle_cover;
use oddpack::graph::{is_bipartite, vertex_connectivity};
use oddpack::harness::{
    all_graph_keys, all_graphs, build_instance, canonical_key, gen_non_parity_linked,
    gen_tight_cover, graph_from_key, run_sweep, sample_random, InstanceSpec, Status,
    SuiteConfig, SweepConfig, SUITES,
};
use oddpack::partitions::tau;
use oddpack::pbm::Parity;
use oddpack::{Budget, Error, Graph, GraphBuilder};
use proptest::prelude::*;

fn b() -> Budget {
    Budget::default()
}

/// Adjacency bits of `g` relabelled by `perm`, upper triangle row by row.
fn bits_under(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut bits = 0u64;
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(perm[u], perm[v]) {
                bits |= 1 << i;
            }
            i += 1;
        }
    }
    bits
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism classes of graphs on `n` vertices, by minimizing over every
/// relabelling of every labelled graph.
fn brute_class_count(n: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for bits in 0u64..1 << pairs {
        let mut bld = GraphBuilder::new(n);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> i & 1 == 1 {
                    bld.add_edge(u, v);
                }
                i += 1;
            }
        }
        let g = bld.build();
        classes.insert(perms.iter().map(|p| bits_under(&g, p)).min().unwrap());
    }
    classes.len()
}

#[test]
fn enumeration_counts() {
    for n in 0..=5 {
        assert_eq!(all_graph_keys(n).len(), brute_class_count(n), "n = {n}");
    }
    let counts: Vec<usize> = (1..=8).map(|n| all_graph_keys(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044, 12346]);
}

#[test]
fn enumerated_graphs_are_pairwise_non_isomorphic() {
    let gs = all_graphs(6);
    let keys: BTreeSet<u64> = gs.iter().map(canonical_key).collect();
    assert_eq!(keys.len(), gs.len());
    let perms = permutations(6);
    let brute: BTreeSet<u64> = gs
        .iter()
        .map(|g| perms.iter().map(|p| bits_under(g, p)).min().unwrap())
        .collect();
    assert_eq!(brute.len(), gs.len());
}

#[test]
fn non_parity_linked_generator() {
    let (g, ts) = gen_non_parity_linked(1, 4).unwrap();
    assert!(is_bipartite(&g).is_some());
    assert_eq!(ts.pairs(), &[(4, 5)]);

    let (g, ts) = gen_non_parity_linked(2, 8).unwrap();
    assert_eq!(g.n(), 16);
    assert_eq!(g.m(), 64 + 3 + 4);
    assert_eq!(ts.pairs(), &[(8, 9), (10, 11)]);
    assert!((0..2).all(|i| ts.demand(i) == Some(Parity::Odd)));
    assert_eq!(min_odd_cycle_cover(&g, &b()).unwrap().len(), 4);
    assert_eq!(brute_oct_small_side(&g, 8), 4);
    assert!(gen_non_parity_linked(2, 3).is_err());
    assert!(gen_non_parity_linked(0, 3).is_err());
}

/// Least cover among subsets of the two clique regions, which hold every
/// odd cycle's non-bipartite edges: the first `2k - 1` of `A` and first
/// `2k` of `B` suffice for `k = 2` at this size.
fn brute_oct_small_side(g: &Graph, side: usize) -> usize {
    let region: Vec<usize> = (0..3).chain(side..side + 4).collect();
    min_subset(region.len(), &mut |x| {
        let removed: Vec<usize> = x.iter().map(|&i| region[i]).collect();
        bipartite_alive(g, &alive_graph(g, &removed))
    })
}

#[test]
fn tight_cover_generator() {
    for t in 1..=3 {
        let (g, s) = gen_tight_cover(3, t, 6).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(tau(&g.induced(s.as_slice()).graph, &b()).unwrap(), t - 1);
        assert_eq!(brute_tau(&g.induced(s.as_slice()).graph), t - 1);
    }
    assert!(gen_tight_cover(2, 0, 8).is_err());
    assert!(gen_tight_cover(2, 3, 8).is_err());
    assert!(gen_tight_cover(3, 1, 4).is_err());
}

#[test]
fn random_families() {
    let gnp = |p: f64, seed: u64| sample_random(&InstanceSpec::RandomGnp { n: 8, p, seed }).unwrap();
    assert_eq!(gnp(0.0, 1).m(), 0);
    assert_eq!(gnp(1.0, 1), Graph::complete(8));
    assert_eq!(gnp(0.5, 7), gnp(0.5, 7));
    assert_ne!(gnp(0.5, 7), gnp(0.5, 8));
    assert!(sample_random(&InstanceSpec::RandomGnp { n: 3, p: 1.5, seed: 0 }).is_err());

    let spec = InstanceSpec::RandomDense { n: 20, connectivity: 15, seed: 3 };
    let g = sample_random(&spec).unwrap();
    assert!(vertex_connectivity(&g) >= 15);
    assert_eq!(g, sample_random(&spec).unwrap());
    assert!(sample_random(&InstanceSpec::RandomDense { n: 5, connectivity: 5, seed: 0 }).is_err());
}

#[test]
fn instance_specs_round_trip_through_json() {
    let specs = [
        InstanceSpec::NonParityLinked { k: 2, side: 8 },
        InstanceSpec::TightCover { k: 2, tau: 1, side: 7 },
        InstanceSpec::RandomGnp { n: 9, p: 0.25, seed: 11 },
    ];
    for spec in specs {
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<InstanceSpec>(&text).unwrap(), spec);
        let inst = build_instance(&spec).unwrap();
        assert!(inst.graph.n() > 0);
    }
    let inst = build_instance(&InstanceSpec::TightCover { k: 2, tau: 2, side: 7 }).unwrap();
    assert_eq!(inst.s.unwrap().as_slice(), &[7, 8]);
}

fn small_config(suite: &str, max_n: usize, samples: usize, workers: usize) -> SweepConfig {
    let mut cfg = SweepConfig {
        workers: Some(workers),
        ..SweepConfig::default()
    };
    cfg.suites.insert(
        suite.into(),
        SuiteConfig {
            max_n: Some(max_n),
            samples: Some(samples),
            ..SuiteConfig::default()
        },
    );
    cfg
}

#[test]
fn every_suite_runs_clean_at_small_size() {
    for &suite in SUITES {
        let (max_n, samples) = match suite {
            "tight-examples" => (0, 0),
            "dense-k1" => (52, 2),
            _ => (5, 20),
        };
        let report = run_sweep(suite, &small_config(suite, max_n, samples, 2)).unwrap();
        assert!(report.summary.clean(), "{suite}: {:?}", report.summary);
        assert!(report.summary.checked > 0, "{suite}");
        assert!(report.records.iter().all(|r| r.status == Status::Pass));
    }
}

#[test]
fn sweeps_are_deterministic_across_worker_counts() {
    for suite in ["geelen-dichotomy", "konig", "pbm-extractors"] {
        let strip = |workers| {
            let mut r = run_sweep(suite, &small_config(suite, 6, 40, workers)).unwrap();
            r.summary.millis = 0;
            for rec in &mut r.records {
                rec.millis = 0;
            }
            r
        };
        assert_eq!(strip(1), strip(4), "{suite}");
    }
}

#[test]
fn report_is_line_delimited_json() {
    let report = run_sweep("observation2", &small_config("observation2", 4, 0, 1)).unwrap();
    let text = report.to_jsonl();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), report.records.len() + 1);
    for line in &lines {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["suite"], "observation2");
    // connected graphs only
    assert_eq!(last["checked"], 1 + 1 + 2 + 6);
}

#[test]
fn budget_exhaustion_is_recorded_not_fatal() {
    let mut cfg = small_config("erdos-gallai", 6, 0, 1);
    cfg.suites.get_mut("erdos-gallai").unwrap().max_nodes = Some(3);
    let report = run_sweep("erdos-gallai", &cfg).unwrap();
    assert!(report.summary.exhausted > 0);
    assert_eq!(report.summary.counterexamples, 0);
    assert!(report.records.iter().any(|r| r.status == Status::BudgetExhausted));
}

#[test]
fn config_parsing() {
    let cfg = SweepConfig::from_toml(
        "workers = 3\n[budget]\nmax_nodes = 99\n[suites.konig]\nmax_n = 7\nseed = 5\n",
    )
    .unwrap();
    assert_eq!(cfg.workers, Some(3));
    assert_eq!(cfg.suite("konig").max_n, Some(7));
    assert_eq!(cfg.budget_for("konig").max_nodes, 99);
    assert_eq!(cfg.suite("observation2"), SuiteConfig::default());
    assert!(SweepConfig::from_toml("[suites.konig]\nmax_m = 7\n").is_err());
    assert!(matches!(
        run_sweep("no-such-suite", &SweepConfig::default()),
        Err(Error::InvalidInput(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_key_ignores_labels(g in graphs(0, 10), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let mut bld = GraphBuilder::new(n);
        for (u, v) in g.edges() {
            bld.add_edge(perm[u], perm[v]);
        }
        let h = bld.build();
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        let back = graph_from_key(n, canonical_key(&g));
        prop_assert_eq!(canonical_key(&back), canonical_key(&g));
        prop_assert_eq!(back.m(), g.m());
    }
}
