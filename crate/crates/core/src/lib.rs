//! Exact, desk-scale tooling for packing and covering odd cycles through a
//! prescribed vertex set: minimum odd cycle covers, nice partitions and
//! their within-part graphs, parity-breaking matchings, parity linkages,
//! pack-or-cover drivers, and the extremal families that show the cover
//! bounds are tight.
//!
//! Every solver returns a certificate that can be re-checked against the
//! input graph; every exhaustive routine runs under a [`Budget`].

pub mod budget;
pub mod covers;
pub mod error;
pub mod graph;
pub mod harness;
pub mod linkage;
pub mod packing;
pub mod partitions;
pub mod pbm;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Cycle, Graph, GraphBuilder, SubGraph, VertexSet};
