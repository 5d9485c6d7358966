//! Acceptance run: one PASS/FAIL line per criterion, then a single assert.
//!
//! Every limit below is fixed here; the suites read nothing from the
//! environment in this target.

use std::time::{Duration, Instant};

use oddpack::harness::{all_graph_keys, run_sweep, SuiteConfig, SweepConfig, SweepReport};

/// Wall-clock ceilings per criterion.
const OBSERVATION2_LIMIT: Duration = Duration::from_secs(5 * 60);
const PBM_LIMIT: Duration = Duration::from_secs(10 * 60);
const TIGHT_EACH_LIMIT_MS: u64 = 2 * 60 * 1000;
const DENSE_K1_LIMIT: Duration = Duration::from_secs(10 * 60);

/// Sizes and sample counts.
const OBSERVATION2_MAX_N: usize = 8;
const PBM_EXHAUSTIVE_N: usize = 8;
const PBM_SAMPLES_AT_9: usize = 3000;
const GEELEN_MAX_N: usize = 8;
const GEELEN_MIN_CASES: u64 = 10_000;
const ERDOS_GALLAI_MAX_N: usize = 9;
const TIGHT_MAX_SIDE: usize = 8;
const TWIN_MAX_N: usize = 8;
const KONIG_EXHAUSTIVE_N: usize = 9;
const KONIG_SAMPLES_10_TO_12: usize = 10_000;
const DENSE_K1_MAX_N: usize = 64;
const DENSE_K1_INSTANCES: usize = 100;

/// Connected graphs on 1..=8 vertices, up to isomorphism.
const CONNECTED_UP_TO_8: u64 = 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117;

/// Counts must match exactly; no failure is tolerated anywhere.
const ALLOWED_FAILURES: usize = 0;

fn sweep(suite: &str, max_n: usize, samples: usize) -> (SweepReport, Duration) {
    let mut cfg = SweepConfig::default();
    cfg.suites.insert(
        suite.into(),
        SuiteConfig {
            max_n: Some(max_n),
            samples: Some(samples),
            seed: Some(0x5eed),
            ..SuiteConfig::default()
        },
    );
    let started = Instant::now();
    let report = run_sweep(suite, &cfg).unwrap();
    (report, started.elapsed())
}

fn failures(r: &SweepReport) -> usize {
    r.summary.counterexamples + r.summary.errors + r.summary.exhausted as usize
}

fn stat(r: &SweepReport, name: &str) -> u64 {
    r.summary.stats.get(name).copied().unwrap_or(0)
}

struct Verdicts(Vec<(usize, bool)>);

impl Verdicts {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        println!("{} criterion {n}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.0.push((n, ok));
    }
}

#[test]
fn acceptance() {
    let mut v = Verdicts(Vec::new());

    let (r, t) = sweep("observation2", OBSERVATION2_MAX_N, 0);
    v.record(
        1,
        failures(&r) == ALLOWED_FAILURES && r.summary.checked == CONNECTED_UP_TO_8 && t <= OBSERVATION2_LIMIT,
        format!(
            "observation2 n <= {OBSERVATION2_MAX_N}: {} connected graphs, {} failures, {:.1}s",
            r.summary.checked,
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("pbm-extractors", PBM_EXHAUSTIVE_N, PBM_SAMPLES_AT_9);
    let dead = stat(&r, "dead_branch_activations");
    v.record(
        2,
        failures(&r) == ALLOWED_FAILURES
            && dead == 0
            && stat(&r, "4k_cases") > 0
            && stat(&r, "independent_cases") > 0
            && t <= PBM_LIMIT,
        format!(
            "pbm extractors, all systems k <= 3 on n <= {PBM_EXHAUSTIVE_N} plus {PBM_SAMPLES_AT_9} graphs at n = 9: \
             {} 4k cases, {} independent cases, {} failures, {dead} dead-branch activations, {:.1}s",
            stat(&r, "4k_cases"),
            stat(&r, "independent_cases"),
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("geelen-dichotomy", GEELEN_MAX_N, 0);
    v.record(
        3,
        failures(&r) == ALLOWED_FAILURES && r.summary.checked >= GEELEN_MIN_CASES,
        format!(
            "odd Z-path dichotomy, ell in {{1,2}}, n <= {GEELEN_MAX_N}, random z: {} cases \
             ({} packings, {} covers), {} violations, {:.1}s",
            r.summary.checked,
            stat(&r, "packings"),
            stat(&r, "covers"),
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("erdos-gallai", ERDOS_GALLAI_MAX_N, 0);
    v.record(
        4,
        failures(&r) == ALLOWED_FAILURES && stat(&r, "tau_critical") > 0,
        format!(
            "Erdős–Gallai n <= {ERDOS_GALLAI_MAX_N}: {} graphs, {} τ-critical, {} exceptions, {:.1}s",
            r.summary.checked,
            stat(&r, "tau_critical"),
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("tight-examples", TIGHT_MAX_SIDE, 0);
    let slowest = r.records.iter().map(|x| x.millis).max().unwrap_or(0);
    v.record(
        5,
        failures(&r) == ALLOWED_FAILURES && r.summary.jobs == 5 && slowest <= TIGHT_EACH_LIMIT_MS,
        format!(
            "tight examples at side <= {TIGHT_MAX_SIDE}: {} instances exact, {} mismatches, slowest {slowest}ms, {:.1}s",
            r.summary.jobs,
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("twin-reduction", TWIN_MAX_N, 0);
    let pairs: u64 = (1..=TWIN_MAX_N)
        .map(|n| n as u64 * all_graph_keys(n).len() as u64)
        .sum();
    v.record(
        6,
        failures(&r) == ALLOWED_FAILURES && r.summary.checked == pairs,
        format!(
            "twin reduction n <= {TWIN_MAX_N}: {} of {pairs} (graph, terminal) pairs agree, {:.1}s",
            r.summary.checked as usize - r.summary.counterexamples,
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("konig", KONIG_EXHAUSTIVE_N, KONIG_SAMPLES_10_TO_12);
    v.record(
        7,
        failures(&r) == ALLOWED_FAILURES && stat(&r, "bipartite") > 0,
        format!(
            "König and greedy matching bound: all graphs n <= {KONIG_EXHAUSTIVE_N} plus \
             {KONIG_SAMPLES_10_TO_12} samples at n in 10..=12: {} graphs, {} bipartite, {} failures, {:.1}s",
            r.summary.checked,
            stat(&r, "bipartite"),
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let (r, t) = sweep("dense-k1", DENSE_K1_MAX_N, DENSE_K1_INSTANCES);
    v.record(
        8,
        failures(&r) == ALLOWED_FAILURES
            && r.summary.checked >= DENSE_K1_INSTANCES as u64
            && t <= DENSE_K1_LIMIT,
        format!(
            "k = 1 at connectivity >= 50, n in 51..={DENSE_K1_MAX_N}: {} instances \
             ({} packings, {} covers), {} failures, {:.1}s",
            r.summary.checked,
            stat(&r, "packings"),
            stat(&r, "covers"),
            failures(&r),
            t.as_secs_f64()
        ),
    );

    let failed: Vec<usize> = v.0.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
