use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{dimacs, vertex_connectivity, Graph, GraphBuilder, VertexSet};
use crate::pbm::{Parity, TerminalSystem};

/// Complete bipartite graph on `A = 0..side`, `B = side..2 side`, a clique on
/// `A[0..2k-1]`, and inside `B` a clique on `s_1, t_1, ..., s_k, t_k` (the
/// first `2k` vertices of `B`, `s_i = side + 2i`, `t_i = s_i + 1`) minus the
/// edges `s_i t_i`. Every pair demands an odd path.
pub fn gen_non_parity_linked(k: usize, side: usize) -> Result<(Graph, TerminalSystem)> {
    if k == 0 || side < 2 * k {
        return Err(Error::InvalidInput(format!(
            "need k >= 1 and side >= 2k (k = {k}, side = {side})"
        )));
    }
    let mut b = bipartite_base(side);
    add_clique(&mut b, &(0..2 * k - 1).collect::<Vec<_>>());
    let terminals: Vec<usize> = (side..side + 2 * k).collect();
    for (i, &u) in terminals.iter().enumerate() {
        for &v in &terminals[i + 1..] {
            if !(u % 2 == side % 2 && v == u + 1) {
                b.add_edge(u, v);
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (side + 2 * i, side + 2 * i + 1)).collect();
    let ts = TerminalSystem::with_parities(pairs, vec![Parity::Odd; k])?;
    Ok((b.build(), ts))
}

/// Complete bipartite graph on `A = 0..side`, `B = side..2 side` with a
/// clique on `A[0..2k-1]` and a clique on `B[0..tau]`; `S = B[0..k]`.
pub fn gen_tight_cover(k: usize, tau: usize, side: usize) -> Result<(Graph, VertexSet)> {
    if tau == 0 || tau > k || side < (2 * k - 1).max(k) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= tau <= k and side >= max(2k-1, k) (k = {k}, tau = {tau}, side = {side})"
        )));
    }
    let mut b = bipartite_base(side);
    add_clique(&mut b, &(0..2 * k - 1).collect::<Vec<_>>());
    add_clique(&mut b, &(side..side + tau).collect::<Vec<_>>());
    Ok((b.build(), (side..side + k).collect()))
}

fn bipartite_base(side: usize) -> GraphBuilder {
    let mut b = GraphBuilder::new(2 * side);
    for u in 0..side {
        for v in side..2 * side {
            b.add_edge(u, v);
        }
    }
    b
}

fn add_clique(b: &mut GraphBuilder, vs: &[usize]) {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            b.add_edge(u, v);
        }
    }
}

/// How to obtain one input graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase")]
pub enum InstanceSpec {
    NonParityLinked {
        k: usize,
        side: usize,
    },
    TightCover {
        k: usize,
        tau: usize,
        side: usize,
    },
    RandomGnp {
        n: usize,
        p: f64,
        seed: u64,
    },
    /// `K_n` minus random edges, redrawn until the vertex connectivity is at
    /// least `connectivity`.
    RandomDense {
        n: usize,
        connectivity: usize,
        seed: u64,
    },
    File {
        path: PathBuf,
    },
}

/// The graph described by `spec`, with the family's terminal data where it
/// has any.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: Option<TerminalSystem>,
    pub s: Option<VertexSet>,
}

pub fn build_instance(spec: &InstanceSpec) -> Result<Instance> {
    Ok(match spec {
        InstanceSpec::NonParityLinked { k, side } => {
            let (graph, ts) = gen_non_parity_linked(*k, *side)?;
            Instance {
                graph,
                terminals: Some(ts),
                s: None,
            }
        }
        InstanceSpec::TightCover { k, tau, side } => {
            let (graph, s) = gen_tight_cover(*k, *tau, *side)?;
            Instance {
                graph,
                terminals: None,
                s: Some(s),
            }
        }
        InstanceSpec::File { path } => Instance {
            graph: dimacs::read_file(path)?,
            terminals: None,
            s: None,
        },
        random => Instance {
            graph: sample_random(random)?,
            terminals: None,
            s: None,
        },
    })
}

/// Deterministic pseudo-random graph for the random families.
pub fn sample_random(spec: &InstanceSpec) -> Result<Graph> {
    match *spec {
        InstanceSpec::RandomGnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidInput(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut b = GraphBuilder::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        b.add_edge(u, v);
                    }
                }
            }
            Ok(b.build())
        }
        InstanceSpec::RandomDense {
            n,
            connectivity,
            seed,
        } => random_dense(n, connectivity, seed),
        _ => Err(Error::InvalidInput("not a random family".into())),
    }
}

/// Removes a random set of edges from `K_n`, keeping every degree at least
/// `connectivity`, until the result is `connectivity`-connected.
fn random_dense(n: usize, connectivity: usize, seed: u64) -> Result<Graph> {
    if n <= connectivity {
        return Err(Error::InvalidInput(format!(
            "{n} vertices cannot be {connectivity}-connected"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spare = n - 1 - connectivity;
    for _ in 0..64 {
        let mut edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        edges.shuffle(&mut rng);
        let mut removed = vec![0usize; n];
        let quota = rng.gen_range(0..=spare);
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if removed[u] < quota && removed[v] < quota && rng.gen_bool(0.5) {
                removed[u] += 1;
                removed[v] += 1;
            } else {
                b.add_edge(u, v);
            }
        }
        let g = b.build();
        if vertex_connectivity(&g) >= connectivity {
            return Ok(g);
        }
    }
    Err(Error::InvalidInput(format!(
        "no {connectivity}-connected graph on {n} vertices drawn for seed {seed}"
    )))
}
