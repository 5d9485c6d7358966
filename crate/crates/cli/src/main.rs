//! `oddpack`: odd cycle packing and covering at desk scale.
//!
//! Graphs are read as DIMACS edge lists (`p edge n m`, `e u v`) from
//! `--input` or standard input. Vertices are 1-indexed on the command line
//! and in every output.
//!
//! Exit codes: 0 certificate found, 1 valid negative answer, 2 input error,
//! 3 search budget exhausted.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oddpack::covers::{self, Strategy};
use oddpack::graph::{dimacs, Cycle};
use oddpack::harness::{self, InstanceSpec, SweepConfig};
use oddpack::linkage::{self, Linkage, ZPathOutcome};
use oddpack::packing::{self, DichotomyResult, MatchingFormOutcome, Outcome};
use oddpack::partitions::{self, CoverCheck, Matching, NicePartition};
use oddpack::pbm::{self, Parity, TerminalSystem};
use oddpack::{Budget, Error, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "oddpack", version, about = "Odd S-cycle packing and covering")]
struct Cli {
    /// DIMACS edge list; standard input when omitted or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum odd cycle cover.
    Occ {
        #[arg(long, value_enum, default_value_t = OccMethod::Auto)]
        method: OccMethod,
    },
    /// Minimum odd S-cycle cover.
    SOcc {
        #[arg(long)]
        terminals: String,
    },
    /// Nice partition induced by a minimum odd cycle cover.
    NicePartition,
    /// Vertex cover number with a minimum cover.
    Tau,
    /// Exit 0 if the graph is τ-critical, 1 otherwise.
    TauCritical,
    /// Parity-breaking matching.
    Pbm {
        /// `s1,t1;s2,t2;...`
        #[arg(long)]
        pairs: String,
        /// Pair indices (1-based); every pair when omitted.
        #[arg(long)]
        parity_set: Option<String>,
        #[arg(long, value_enum, default_value_t = PbmMethod::Brute)]
        method: PbmMethod,
    },
    /// Disjoint paths joining every pair.
    Linkage {
        #[arg(long)]
        pairs: String,
    },
    /// Disjoint paths with prescribed parities.
    ParityLinkage {
        #[arg(long)]
        pairs: String,
        /// `i:odd,j:even,...` with 1-based pair indices.
        #[arg(long)]
        parity_set: String,
        #[arg(long, value_enum, default_value_t = LinkageMethod::Exhaustive)]
        method: LinkageMethod,
    },
    /// `ell` disjoint odd Z-paths or a small hitting set.
    OddZPaths {
        /// The set Z.
        #[arg(long)]
        terminals: String,
        #[arg(long)]
        ell: usize,
    },
    /// `k` disjoint odd S-cycles.
    Pack {
        #[arg(long)]
        terminals: String,
        #[arg(long)]
        k: usize,
    },
    /// `k` disjoint odd S-cycles or an odd S-cycle cover.
    Dichotomy {
        #[arg(long)]
        terminals: String,
        #[arg(long)]
        k: usize,
    },
    /// `k` disjoint odd S-cycles or an odd cycle cover.
    DichotomyBipartite {
        #[arg(long)]
        terminals: String,
        #[arg(long)]
        k: usize,
    },
    /// `k` disjoint odd cycles via triangles or an independent set.
    Triangles {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = TriangleMethod::MatchingForm)]
        method: TriangleMethod,
    },
    /// Generate an instance and print it as DIMACS.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        side: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        connectivity: Option<usize>,
    },
    /// Run a property suite and print JSON lines.
    Sweep {
        #[arg(long)]
        suite: String,
        /// TOML config; falls back to $ODDPACK_SWEEP_CONFIG.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OccMethod {
    Auto,
    Enumerate,
    BranchAndBound,
}

#[derive(Clone, Copy, ValueEnum)]
enum PbmMethod {
    Brute,
    #[value(name = "extract4k", alias = "4k")]
    FourK,
    Independent,
    Equivalence,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkageMethod {
    Exhaustive,
    Assemble,
}

#[derive(Clone, Copy, ValueEnum)]
enum TriangleMethod {
    Greedy,
    MatchingForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    NonParityLinked,
    TightCover,
    RandomGnp,
    RandomDense,
}

/// A finished command: what to print and how to exit.
struct Report {
    found: bool,
    json: Value,
    text: Vec<String>,
}

impl Report {
    fn new(found: bool, json: Value, text: impl IntoIterator<Item = String>) -> Self {
        Report {
            found,
            json,
            text: text.into_iter().collect(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            // a closed pipe (`| head`) is not an error worth reporting
            let mut out = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json")
                )
            } else {
                report.text.iter().try_for_each(|line| writeln!(out, "{line}"))
            };
            ExitCode::from(if report.found { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExhausted { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn one(v: usize) -> usize {
    v + 1
}

fn ones<'a>(vs: impl IntoIterator<Item = &'a usize>) -> Vec<usize> {
    vs.into_iter().map(|&v| v + 1).collect()
}

fn show(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", parts.join(" "))
}

fn show_path(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    parts.join("-")
}

fn read_graph(cli: &Cli) -> anyhow::Result<Graph> {
    let text = match cli.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    Ok(dimacs::parse(&text)?)
}

fn vertex(token: &str, n: usize) -> anyhow::Result<usize> {
    let v: usize = token
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad vertex {token:?}")))?;
    if v == 0 || v > n {
        return Err(Error::InvalidInput(format!("vertex {v} outside 1..={n}")).into());
    }
    Ok(v - 1)
}

fn parse_set(spec: &str, n: usize) -> anyhow::Result<VertexSet> {
    spec.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| vertex(t, n))
        .collect()
}

fn parse_pairs(spec: &str, n: usize) -> anyhow::Result<Vec<(usize, usize)>> {
    spec.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|pair| {
            let (s, t) = pair
                .split_once(',')
                .ok_or_else(|| Error::InvalidInput(format!("pair {pair:?} needs the form s,t")))?;
            Ok((vertex(s, n)?, vertex(t, n)?))
        })
        .collect()
}

/// `1,3` or `1:odd,2:even`; indices are 1-based.
fn parse_parity_set(
    spec: &str,
    k: usize,
) -> anyhow::Result<(BTreeSet<usize>, BTreeMap<usize, Parity>)> {
    let mut set = BTreeSet::new();
    let mut demands = BTreeMap::new();
    for item in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (idx, parity) = match item.split_once(':') {
            Some((i, p)) => (i, Some(p)),
            None => (item, None),
        };
        let i: usize = idx
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad pair index {idx:?}")))?;
        if i == 0 || i > k {
            return Err(Error::InvalidInput(format!("pair index {i} outside 1..={k}")).into());
        }
        set.insert(i - 1);
        if let Some(p) = parity {
            let p = match p.to_ascii_lowercase().as_str() {
                "odd" | "o" => Parity::Odd,
                "even" | "e" => Parity::Even,
                other => {
                    return Err(
                        Error::InvalidInput(format!("parity {other:?} is not odd or even")).into(),
                    )
                }
            };
            demands.insert(i - 1, p);
        }
    }
    Ok((set, demands))
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = cli.budget_nodes {
        b.max_nodes = n;
    }
    b.max_seconds = cli.budget_seconds;
    b
}

fn canonical_nice_partition(g: &Graph, budget: &Budget) -> anyhow::Result<NicePartition> {
    let x = covers::min_odd_cycle_cover(g, budget)?;
    Ok(partitions::nice_partition(
        g,
        &x,
        CoverCheck::Trusted,
        budget,
    )?)
}

fn matching_json(m: &Matching) -> Value {
    if m.is_indexed() {
        Value::Array(
            m.indexed_edges()
                .into_iter()
                .map(|(i, (u, v))| json!({"pair": i + 1, "edge": [one(u), one(v)]}))
                .collect(),
        )
    } else {
        Value::Array(
            m.edges()
                .iter()
                .map(|&(u, v)| json!([one(u), one(v)]))
                .collect(),
        )
    }
}

fn matching_text(m: &Matching) -> Vec<String> {
    if m.is_indexed() {
        m.indexed_edges()
            .into_iter()
            .map(|(i, (u, v))| format!("m{} = {} {}", i + 1, one(u), one(v)))
            .collect()
    } else {
        m.edges()
            .iter()
            .map(|&(u, v)| format!("{} {}", one(u), one(v)))
            .collect()
    }
}

fn pbm_report(m: &Matching, g: &Graph, np: &NicePartition, ts: &TerminalSystem) -> Report {
    let verified = pbm::is_parity_breaking(m, g, &np.partition, ts);
    let mut text = matching_text(m);
    text.push(format!("parity breaking: {verified}"));
    Report::new(
        true,
        json!({"matching": matching_json(m), "verified": verified}),
        text,
    )
}

fn linkage_report(linkage: Option<Linkage>, g: &Graph, ts: &TerminalSystem) -> Report {
    match linkage {
        Some(l) => Report::new(
            true,
            json!({
                "linkage": l.paths.iter().map(|p| ones(p)).collect::<Vec<_>>(),
                "verified": l.validate(g, ts).is_ok(),
            }),
            l.paths
                .iter()
                .enumerate()
                .map(|(i, p)| format!("P{} ({} edges): {}", i + 1, p.len() - 1, show_path(p))),
        ),
        None => Report::new(false, json!({"linkage": null}), ["no linkage".to_string()]),
    }
}

fn cycles_json(cycles: &[Cycle]) -> Value {
    Value::Array(cycles.iter().map(|c| json!(ones(c.vertices()))).collect())
}

fn cycles_text(cycles: &[Cycle]) -> impl Iterator<Item = String> + '_ {
    cycles
        .iter()
        .enumerate()
        .map(|(i, c)| format!("C{} ({}): {}", i + 1, c.len(), show_path(c.vertices())))
}

fn dichotomy_report(r: DichotomyResult, g: &Graph, s: &VertexSet, k: usize) -> Report {
    let mut json = json!({
        "verified": r.verify(g, s, k),
        "bound": r.bound,
        "bound_met": r.bound_met,
        "connectivity": r.connectivity,
    });
    let mut text = Vec::new();
    match &r.outcome {
        Outcome::Packing(p) => {
            json["packing"] = cycles_json(&p.cycles);
            text.push(format!("packing of {} odd S-cycles", p.len()));
            text.extend(cycles_text(&p.cycles));
        }
        Outcome::SCycleCover(c) => {
            json["odd_s_cycle_cover"] = json!(ones(c.members.as_slice()));
            text.push(format!(
                "odd S-cycle cover of size {}: {}",
                c.members.len(),
                show(c.members.as_slice())
            ));
        }
        Outcome::BipartiteCover(c) => {
            json["odd_cycle_cover"] = json!(ones(c.members.as_slice()));
            text.push(format!(
                "odd cycle cover of size {}: {}",
                c.members.len(),
                show(c.members.as_slice())
            ));
        }
    }
    if let Some(t) = r.tau_k {
        json["tau_k"] = json!(t);
        text.push(format!("tau_k = {t}"));
    }
    if let Some(m) = r.relaxed_bound_met {
        json["relaxed_bound_met"] = json!(m);
    }
    text.push(format!(
        "bound {} {}; connectivity {}",
        r.bound,
        if r.bound_met { "met" } else { "missed" },
        r.connectivity
    ));
    Report::new(true, json, text)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let budget = budget(cli);
    match &cli.command {
        Command::Gen { .. } => return generate(cli),
        Command::Sweep {
            suite,
            config,
            output,
        } => return sweep(cli, suite, config.as_ref(), output.as_ref()),
        _ => {}
    }
    let g = read_graph(cli)?;
    let n = g.n();
    Ok(match &cli.command {
        Command::Occ { method } => {
            let strategy = match method {
                OccMethod::Auto => Strategy::Auto,
                OccMethod::Enumerate => Strategy::Enumerate,
                OccMethod::BranchAndBound => Strategy::BranchAndBound,
            };
            let x = covers::min_odd_cycle_cover_with(&g, &budget, strategy)?;
            Report::new(
                true,
                json!({
                    "size": x.len(),
                    "members": ones(x.members.as_slice()),
                    "verified": covers::is_odd_cycle_cover(&g, &x.members),
                }),
                [format!("odd cycle cover of size {}: {}", x.len(), show(x.members.as_slice()))],
            )
        }
        Command::SOcc { terminals } => {
            let s = parse_set(terminals, n)?;
            let x = covers::min_odd_s_cycle_cover(&g, &s, &budget)?;
            Report::new(
                true,
                json!({
                    "size": x.members.len(),
                    "members": ones(x.members.as_slice()),
                    "verified": covers::verify_cover(&g, &s, &x.members),
                }),
                [format!(
                    "odd S-cycle cover of size {}: {}",
                    x.members.len(),
                    show(x.members.as_slice())
                )],
            )
        }
        Command::NicePartition => {
            let np = canonical_nice_partition(&g, &budget)?;
            let within = partitions::within_graph(&g, &np.partition);
            let a = np.partition.a.as_slice();
            let b = np.partition.b.as_slice();
            let x = np.inducing_cover.members.as_slice();
            let t = partitions::tau(&within.graph, &budget)?;
            Report::new(
                true,
                json!({
                    "a": ones(a),
                    "b": ones(b),
                    "cover": ones(x),
                    "within_edges": within.graph.m(),
                    "tau_within": t,
                    "verified": t == x.len(),
                }),
                [
                    format!("A = {}", show(a)),
                    format!("B = {}", show(b)),
                    format!("cover = {}", show(x)),
                    format!("edges inside the parts: {}", within.graph.m()),
                    format!("tau of the within-graph: {t}"),
                ],
            )
        }
        Command::Tau => {
            let y = partitions::min_vertex_cover(&g, &budget)?;
            Report::new(
                true,
                json!({"tau": y.len(), "cover": ones(y.as_slice())}),
                [format!("tau = {}: {}", y.len(), show(y.as_slice()))],
            )
        }
        Command::TauCritical => {
            let t = partitions::tau(&g, &budget)?;
            let critical = partitions::is_tau_critical(&g, &budget)?;
            Report::new(
                critical,
                json!({"tau_critical": critical, "tau": t, "n": n}),
                [format!(
                    "{} (tau = {t}, n = {n})",
                    if critical { "tau-critical" } else { "not tau-critical" }
                )],
            )
        }
        Command::Pbm {
            pairs,
            parity_set,
            method,
        } => {
            let pairs = parse_pairs(pairs, n)?;
            let k = pairs.len();
            let set = match parity_set {
                Some(spec) => parse_parity_set(spec, k)?.0,
                None => (0..k).collect(),
            };
            let ts = TerminalSystem::new(pairs.clone(), set)?;
            let np = canonical_nice_partition(&g, &budget)?;
            match method {
                PbmMethod::Equivalence => {
                    let r = pbm::nice_partition_equivalence_check(&g, &ts, &budget)?;
                    Report::new(
                        r.uniform(),
                        json!({
                            "uniform": r.uniform(),
                            "minimum_covers": r.minimum_covers,
                            "partitions_checked": r.partitions_checked,
                            "partitions_with_pbm": r.partitions_with_pbm,
                        }),
                        [format!(
                            "{} of {} induced partitions ({} minimum covers) have a parity-breaking matching",
                            r.partitions_with_pbm, r.partitions_checked, r.minimum_covers
                        )],
                    )
                }
                PbmMethod::Brute => match pbm::brute_force_pbm(&g, &np.partition, &ts, &budget)? {
                    Some(m) => pbm_report(&m, &g, &np, &ts),
                    None => Report::new(
                        false,
                        json!({"matching": null}),
                        ["no parity-breaking matching".to_string()],
                    ),
                },
                PbmMethod::FourK | PbmMethod::Independent => {
                    let h = partitions::within_graph(&g, &np.partition).graph;
                    let chosen: Vec<(usize, usize)> = ts.parity_set().iter().map(|&i| pairs[i]).collect();
                    let m = if matches!(method, PbmMethod::FourK) {
                        pbm::extract_pbm_4k(&h, &chosen, &budget)?
                    } else {
                        pbm::extract_pbm_independent(&h, &chosen, &budget)?
                    };
                    // the extractors index by position among the chosen pairs
                    let index: Vec<usize> = ts.parity_set().iter().copied().collect();
                    let m = Matching::indexed(
                        m.indexed_edges()
                            .into_iter()
                            .map(|(j, e)| (index[j], e))
                            .collect(),
                    )?;
                    pbm_report(&m, &g, &np, &ts)
                }
            }
        }
        Command::Linkage { pairs } => {
            let ts = TerminalSystem::plain(parse_pairs(pairs, n)?)?;
            linkage_report(linkage::find_linkage(&g, &ts, &budget)?, &g, &ts)
        }
        Command::ParityLinkage {
            pairs,
            parity_set,
            method,
        } => {
            let pairs = parse_pairs(pairs, n)?;
            let (set, demands) = parse_parity_set(parity_set, pairs.len())?;
            if let Some(i) = set.iter().find(|i| !demands.contains_key(i)) {
                return Err(Error::InvalidInput(format!("pair {} has no parity demand", i + 1)).into());
            }
            let ts = TerminalSystem::new(pairs, set)?.with_demands(demands)?;
            match method {
                LinkageMethod::Exhaustive => linkage_report(linkage::find_parity_linkage(&g, &ts, &budget)?, &g, &ts),
                LinkageMethod::Assemble => {
                    let np = canonical_nice_partition(&g, &budget)?;
                    let Some(m) = pbm::brute_force_pbm(&g, &np.partition, &ts, &budget)? else {
                        return Ok(Report::new(
                            false,
                            json!({"linkage": null, "reason": "no parity-breaking matching"}),
                            ["no parity-breaking matching for the nice partition".to_string()],
                        ));
                    };
                    linkage_report(
                        linkage::assemble_parity_paths(&g, &np, &ts, &m, None, &budget)?,
                        &g,
                        &ts,
                    )
                }
            }
        }
        Command::OddZPaths { terminals, ell } => {
            let z = parse_set(terminals, n)?;
            match linkage::odd_z_path_dichotomy(&g, &z, *ell, &budget)? {
                ZPathOutcome::Packing { paths } => Report::new(
                    true,
                    json!({"paths": paths.iter().map(|p| ones(&p.vertices)).collect::<Vec<_>>()}),
                    paths
                        .iter()
                        .enumerate()
                        .map(|(i, p)| format!("Z{}: {}", i + 1, show_path(&p.vertices))),
                ),
                ZPathOutcome::Cover { hitting_set } => Report::new(
                    true,
                    json!({"hitting_set": ones(hitting_set.as_slice())}),
                    [format!(
                        "hitting set of size {}: {}",
                        hitting_set.len(),
                        show(hitting_set.as_slice())
                    )],
                ),
                ZPathOutcome::Violation {
                    max_packing,
                    min_hitting_set,
                } => Report::new(
                    false,
                    json!({"violation": {"max_packing": max_packing, "min_hitting_set": ones(min_hitting_set.as_slice())}}),
                    [format!(
                        "neither side: {max_packing} paths, hitting set {}",
                        show(min_hitting_set.as_slice())
                    )],
                ),
            }
        }
        Command::Pack { terminals, k } => {
            let s = parse_set(terminals, n)?;
            match packing::pack_odd_s_cycles(&g, &s, *k, &budget)? {
                Some(p) => Report::new(true, json!({"packing": cycles_json(&p.cycles)}), cycles_text(&p.cycles).collect::<Vec<_>>()),
                None => Report::new(
                    false,
                    json!({"packing": null}),
                    [format!("no {k} disjoint odd S-cycles")],
                ),
            }
        }
        Command::Dichotomy { terminals, k } => {
            let s = parse_set(terminals, n)?;
            dichotomy_report(packing::dichotomy_s_cycles(&g, &s, *k, &budget)?, &g, &s, *k)
        }
        Command::DichotomyBipartite { terminals, k } => {
            let s = parse_set(terminals, n)?;
            dichotomy_report(
                packing::dichotomy_bipartite_cover(&g, &s, *k, &budget)?,
                &g,
                &s,
                *k,
            )
        }
        Command::Triangles { k, method } => match method {
            TriangleMethod::Greedy => match packing::greedy_triangle_packing(&g, *k) {
                Some(t) => Report::new(true, json!({"triangles": cycles_json(&t)}), cycles_text(&t).collect::<Vec<_>>()),
                None => Report::new(false, json!({"triangles": null}), [format!("greedy found fewer than {k} triangles")]),
            },
            TriangleMethod::MatchingForm => match packing::dichotomy_matching_form(&g, *k, &budget)? {
                MatchingFormOutcome::IndependentSet { independent, packing } => Report::new(
                    true,
                    json!({"independent": ones(independent.as_slice()), "packing": cycles_json(&packing.cycles)}),
                    std::iter::once(format!("independent set {}", show(independent.as_slice())))
                        .chain(cycles_text(&packing.cycles))
                        .collect::<Vec<_>>(),
                ),
                MatchingFormOutcome::Triangles { packing } => Report::new(
                    true,
                    json!({"triangles": cycles_json(&packing.cycles)}),
                    cycles_text(&packing.cycles).collect::<Vec<_>>(),
                ),
                MatchingFormOutcome::Report {
                    partition,
                    matching_number,
                    deficient,
                } => Report::new(
                    false,
                    json!({
                        "a": ones(partition.partition.a.as_slice()),
                        "b": ones(partition.partition.b.as_slice()),
                        "matching_number": matching_number,
                        "deficient": deficient,
                    }),
                    [format!(
                        "no {k} disjoint odd cycles found; within-graph matching number {matching_number}{}",
                        if deficient { " (< k)" } else { "" }
                    )],
                ),
            },
        },
        Command::Gen { .. } | Command::Sweep { .. } => unreachable!(),
    })
}

fn generate(cli: &Cli) -> anyhow::Result<Report> {
    let Command::Gen {
        family,
        k,
        tau,
        side,
        n,
        p,
        connectivity,
    } = &cli.command
    else {
        unreachable!()
    };
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Error::InvalidInput(format!("--{name} is required for this family")))
    };
    let seed = cli.seed.unwrap_or(0);
    let spec = match family {
        Family::NonParityLinked => InstanceSpec::NonParityLinked {
            k: need(*k, "k")?,
            side: need(*side, "side")?,
        },
        Family::TightCover => InstanceSpec::TightCover {
            k: need(*k, "k")?,
            tau: need(*tau, "tau")?,
            side: need(*side, "side")?,
        },
        Family::RandomGnp => InstanceSpec::RandomGnp {
            n: need(*n, "n")?,
            p: p.ok_or_else(|| Error::InvalidInput("--p is required for this family".into()))?,
            seed,
        },
        Family::RandomDense => InstanceSpec::RandomDense {
            n: need(*n, "n")?,
            connectivity: need(*connectivity, "connectivity")?,
            seed,
        },
    };
    let inst = harness::build_instance(&spec)?;
    let mut text = String::new();
    if let Some(ts) = &inst.terminals {
        let pairs: Vec<String> = ts
            .pairs()
            .iter()
            .map(|&(s, t)| format!("{},{}", one(s), one(t)))
            .collect();
        text.push_str(&format!("c pairs {}\n", pairs.join(";")));
    }
    if let Some(s) = &inst.s {
        let vs: Vec<String> = s.iter().map(|v| one(v).to_string()).collect();
        text.push_str(&format!("c terminals {}\n", vs.join(",")));
    }
    text.push_str(&dimacs::write(&inst.graph));
    Ok(Report::new(
        true,
        json!({
            "spec": spec,
            "n": inst.graph.n(),
            "edges": inst.graph.edges().map(|(u, v)| [one(u), one(v)]).collect::<Vec<_>>(),
            "pairs": inst.terminals.as_ref().map(|ts| ts.pairs().iter().map(|&(s, t)| [one(s), one(t)]).collect::<Vec<_>>()),
            "terminals": inst.s.as_ref().map(|s| ones(s.as_slice())),
        }),
        [text.trim_end().to_string()],
    ))
}

fn sweep(
    cli: &Cli,
    suite: &str,
    config: Option<&PathBuf>,
    output: Option<&PathBuf>,
) -> anyhow::Result<Report> {
    let mut cfg = match config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::from_env()?,
    };
    if let Some(w) = cli.workers {
        cfg.workers = Some(w);
    }
    if cli.budget_nodes.is_some() || cli.budget_seconds.is_some() {
        let mut b = cfg.budget.unwrap_or_default();
        if let Some(n) = cli.budget_nodes {
            b.max_nodes = n;
        }
        if cli.budget_seconds.is_some() {
            b.max_seconds = cli.budget_seconds;
        }
        cfg.budget = Some(b);
        let entry = cfg.suites.entry(suite.to_string()).or_default();
        if cli.budget_nodes.is_some() {
            entry.max_nodes = None;
        }
        if cli.budget_seconds.is_some() {
            entry.max_seconds = None;
        }
    }
    if let Some(seed) = cli.seed {
        cfg.suites.entry(suite.to_string()).or_default().seed = Some(seed);
    }
    let report = harness::run_sweep(suite, &cfg)?;
    let s = &report.summary;
    let lines = report.to_jsonl();
    let text = match output {
        Some(path) => {
            std::fs::write(path, &lines).with_context(|| format!("writing {}", path.display()))?;
            format!(
                "{}: {} jobs, {} checked, {} counterexamples, {} exhausted, {} errors, {} ms",
                s.suite, s.jobs, s.checked, s.counterexamples, s.exhausted, s.errors, s.millis
            )
        }
        None => lines.trim_end().to_string(),
    };
    if s.exhausted > 0 && s.counterexamples == 0 {
        return Err(Error::BudgetExhausted { nodes: 0 }).context(text);
    }
    Ok(Report::new(s.clean(), json!(s), [text]))
}
