use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::suites;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Environment variable naming the sweep configuration file.
pub const CONFIG_ENV: &str = "ODDPACK_SWEEP_CONFIG";

pub const SUITES: &[&str] = &[
    "observation2",
    "geelen-dichotomy",
    "pbm-extractors",
    "erdos-gallai",
    "twin-reduction",
    "konig",
    "tight-examples",
    "dense-k1",
];

/// Per-suite knobs; unset fields fall back to the suite defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub max_n: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

/// Sweep configuration, read from TOML:
///
/// ```toml
/// workers = 4
/// [budget]
/// max_nodes = 50000000
/// [suites.erdos-gallai]
/// max_n = 8
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub workers: Option<usize>,
    pub budget: Option<Budget>,
    #[serde(default)]
    pub suites: BTreeMap<String, SuiteConfig>,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidInput(format!("sweep config: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// The file named by [`CONFIG_ENV`], or defaults when it is unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Self::load(path),
            None => Ok(Self::default()),
        }
    }

    pub fn suite(&self, name: &str) -> SuiteConfig {
        self.suites.get(name).cloned().unwrap_or_default()
    }

    /// Per-instance budget for `suite`.
    pub fn budget_for(&self, suite: &str) -> Budget {
        let mut b = self.budget.unwrap_or_default();
        let s = self.suite(suite);
        if let Some(n) = s.max_nodes {
            b.max_nodes = n;
        }
        if s.max_seconds.is_some() {
            b.max_seconds = s.max_seconds;
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExhausted,
    Error,
}

/// A graph that broke a suite's property, with enough to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub detail: Value,
}

impl Counterexample {
    pub fn new(g: &Graph, detail: Value) -> Self {
        Counterexample {
            n: g.n(),
            edges: g.edges().collect(),
            detail,
        }
    }
}

/// What one job reports back.
#[derive(Debug, Clone, Default)]
pub struct JobOutcome {
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub exhausted: u64,
    pub stats: BTreeMap<String, u64>,
}

impl JobOutcome {
    pub fn bump(&mut self, stat: &str, by: u64) {
        *self.stats.entry(stat.to_string()).or_default() += by;
    }
}

/// A unit of sweep work: a batch of enumerated graphs, or one sampled or
/// constructed instance.
pub struct Job {
    pub id: String,
    /// Canonical ordering key.
    pub order: (usize, usize),
    pub instance: Value,
    pub run: Box<dyn Fn(&Budget) -> Result<JobOutcome> + Send + Sync>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub instance: Value,
    pub status: Status,
    pub checked: u64,
    pub exhausted: u64,
    pub stats: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub jobs: usize,
    pub checked: u64,
    pub counterexamples: usize,
    pub exhausted: u64,
    pub errors: usize,
    pub stats: BTreeMap<String, u64>,
    pub millis: u64,
}

impl Summary {
    pub fn clean(&self) -> bool {
        self.counterexamples == 0 && self.errors == 0 && self.exhausted == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SweepReport {
    /// One JSON record per line, then the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.records.iter().flat_map(|r| r.counterexamples.iter())
    }
}

/// Runs a registered suite. Jobs run on up to `workers` threads; records
/// come back in canonical order whatever the scheduling.
pub fn run_sweep(suite: &str, config: &SweepConfig) -> Result<SweepReport> {
    let jobs = suites::jobs(suite, &config.suite(suite))?;
    let budget = config.budget_for(suite);
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let mut records: Vec<(usize, usize, Record)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| (job.order.0, job.order.1, run_job(job, &budget)))
            .collect()
    });
    records.sort_by_key(|r| (r.0, r.1));
    let records: Vec<Record> = records.into_iter().map(|r| r.2).collect();

    let mut stats = BTreeMap::new();
    for r in &records {
        for (k, v) in &r.stats {
            *stats.entry(k.clone()).or_default() += v;
        }
    }
    let summary = Summary {
        suite: suite.to_string(),
        jobs: records.len(),
        checked: records.iter().map(|r| r.checked).sum(),
        counterexamples: records.iter().map(|r| r.counterexamples.len()).sum(),
        exhausted: records.iter().map(|r| r.exhausted).sum(),
        errors: records.iter().filter(|r| r.status == Status::Error).count(),
        stats,
        millis: started.elapsed().as_millis() as u64,
    };
    Ok(SweepReport { records, summary })
}

fn run_job(job: &Job, budget: &Budget) -> Record {
    let started = Instant::now();
    let result = (job.run)(budget);
    let millis = started.elapsed().as_millis() as u64;
    match result {
        Ok(out) => Record {
            id: job.id.clone(),
            instance: job.instance.clone(),
            status: if !out.counterexamples.is_empty() {
                Status::Fail
            } else if out.exhausted > 0 {
                Status::BudgetExhausted
            } else {
                Status::Pass
            },
            checked: out.checked,
            exhausted: out.exhausted,
            stats: out.stats,
            counterexamples: out.counterexamples,
            error: None,
            millis,
        },
        Err(e) => Record {
            id: job.id.clone(),
            instance: job.instance.clone(),
            status: match e {
                Error::BudgetExhausted { .. } => Status::BudgetExhausted,
                _ => Status::Error,
            },
            checked: 0,
            exhausted: matches!(e, Error::BudgetExhausted { .. }) as u64,
            stats: BTreeMap::new(),
            counterexamples: Vec::new(),
            error: Some(e.to_string()),
            millis,
        },
    }
}
