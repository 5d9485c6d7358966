//! Instance generators, graph enumeration and the sweep runner.

pub mod enumerate;
pub mod generators;
mod suites;
pub mod sweep;

pub use enumerate::{all_graph_keys, all_graphs, canonical_key, graph_from_key, MAX_CANONICAL_N};
pub use generators::{
    build_instance, gen_non_parity_linked, gen_tight_cover, sample_random, Instance, InstanceSpec,
};
pub use sweep::{
    run_sweep, Counterexample, Record, Status, SuiteConfig, Summary, SweepConfig, SweepReport,
    CONFIG_ENV, SUITES,
};
