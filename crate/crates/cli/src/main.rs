//! `indom`: independence-domination number from the command line.
//!
//! Every subcommand prints JSON lines on stdout. The exit code is nonzero
//! iff a verification step failed or the command itself errored.

mod bench;
mod suites;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use indom_core::cograph::{gamma_i_cograph, gamma_i_cotree, Cotree};
use indom_core::dh::{build_dh_decomposition, gamma_i_dh, recognize_dh, PruningSequence};
use indom_core::exact::gamma_i_exact_with;
use indom_core::gen::{generate, Artifact, GraphSpec};
use indom_core::io::{parse, serialize, Format};
use indom_core::oracle::{gamma, gamma_i_oracle, gamma_of_set};
use indom_core::permutation::{gamma_i_permutation, PermutationDiagram};
use indom_core::ptas::{ptas_gamma_i, PtasOptions};
use indom_core::treewidth::{gamma_i_treewidth, heuristic_decomposition, TreeDecomposition};
use indom_core::{DominationCertificate, Error, Graph};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "indom", version, about = "Independence-domination number solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve with the first applicable algorithm, or the one forced by --algo.
    GammaI(GammaIArgs),
    /// Brute-force reference values.
    Oracle(OracleArgs),
    /// Exponential exact algorithm with branching statistics.
    Exact(ExactArgs),
    /// Shifting approximation for planar inputs.
    Ptas(PtasArgs),
    /// Emit a generated graph, optionally writing its class artifact.
    Gen(GenArgs),
    /// Cross-check class solvers against the oracle on random instances.
    Verify(suites::VerifyArgs),
    /// Check product inequalities over all ordered pairs of a corpus.
    ProductCheck(suites::ProductArgs),
    /// Median wall-clock timings per solver.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Graph file; `-` reads stdin.
    input: Option<PathBuf>,
    /// Generate the input instead, e.g. `grid(4,5)` or `random_dh(30)`.
    #[arg(long, conflicts_with = "input")]
    gen: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Input format; detected from the content when omitted.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Algo {
    Auto,
    Cograph,
    Dh,
    Permutation,
    Treewidth,
    Exact,
    Oracle,
}

#[derive(Args)]
struct GammaIArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Replay the certificate against the graph.
    #[arg(long)]
    certify: bool,
    #[arg(long, env = "INDOM_WIDTH_CEILING", default_value_t = indom_core::treewidth::DEFAULT_WIDTH_CEILING)]
    width_ceiling: usize,
    #[arg(long, env = "INDOM_BETA", default_value_t = indom_core::exact::BETA)]
    beta: f64,
    /// Permutation diagram file (`n`, top order, bottom order).
    #[arg(long)]
    diagram: Option<PathBuf>,
    /// Cotree file.
    #[arg(long)]
    cotree: Option<PathBuf>,
    /// Pruning sequence file for distance-hereditary input.
    #[arg(long)]
    pruning: Option<PathBuf>,
    /// Tree decomposition in PACE `.td` format.
    #[arg(long)]
    td: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuery {
    Gamma,
    GammaI,
    GammaSet,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = OracleQuery::GammaI)]
    query: OracleQuery,
    /// Target set for `gamma-set`, comma separated.
    #[arg(long, value_delimiter = ',')]
    set: Vec<usize>,
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, env = "INDOM_BETA", default_value_t = indom_core::exact::BETA)]
    beta: f64,
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct PtasArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    /// Root vertices of the layering, comma separated.
    #[arg(long, value_delimiter = ',')]
    root: Vec<usize>,
    #[arg(long, env = "INDOM_WIDTH_CEILING", default_value_t = indom_core::treewidth::DEFAULT_WIDTH_CEILING)]
    width_ceiling: usize,
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct GenArgs {
    spec: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "edge-list")]
    format: String,
    /// Write the cotree, pruning sequence or diagram here.
    #[arg(long)]
    artifact: Option<PathBuf>,
}

/// Graph plus any side artifact that came with it.
struct Loaded {
    descriptor: String,
    graph: Graph,
    artifact: Option<Artifact>,
}

fn load(args: &InputArgs) -> Result<Loaded> {
    if let Some(spec) = &args.gen {
        let spec: GraphSpec = spec.parse()?;
        let out = generate(&spec, args.seed)?;
        return Ok(Loaded { descriptor: format!("{spec} seed {}", args.seed), graph: out.graph, artifact: out.artifact });
    }
    let (descriptor, text) = match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            (p.display().to_string(), fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            ("stdin".to_string(), s)
        }
    };
    let format = match &args.format {
        Some(f) => f.parse()?,
        None => Format::detect(&text),
    };
    Ok(Loaded { descriptor, graph: parse(&text, format)?, artifact: None })
}

fn read_artifact<T>(path: &PathBuf, parse: impl Fn(&str) -> indom_core::Result<T>) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct RunReport {
    input: String,
    n: usize,
    m: usize,
    algo: Algo,
    value: usize,
    certificate: Option<DominationCertificate>,
    timings_ms: Value,
    stats: Value,
    /// `None` unless verification was requested.
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify_error: Option<String>,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn emit<T: Serialize>(report: &T) -> Result<()> {
    println!("{}", serde_json::to_string(report)?);
    Ok(())
}

struct Solved {
    algo: Algo,
    value: usize,
    certificate: DominationCertificate,
    stats: Value,
}

fn solved(algo: Algo, (value, certificate): (usize, DominationCertificate), stats: Value) -> Solved {
    Solved { algo, value, certificate, stats }
}

/// Runs one forced algorithm.
fn run_algo(algo: Algo, g: &Graph, side: &SideArtifacts, args: &GammaIArgs) -> Result<Solved> {
    Ok(match algo {
        Algo::Auto => unreachable!("auto is resolved by dispatch"),
        Algo::Cograph => finish_cograph(g, side, gamma_i_cograph(g)?)?,
        Algo::Dh => {
            let seq = match &side.pruning {
                Some(s) => s.clone(),
                None => recognize_dh(g)?,
            };
            finish_dh(g, &seq)?
        }
        Algo::Permutation => {
            let Some(d) = &side.diagram else {
                bail!("the permutation solver needs --diagram; diagrams are never inferred from adjacency");
            };
            solved(algo, gamma_i_permutation(d), Value::Null)
        }
        Algo::Treewidth => {
            let td = side.td.clone().unwrap_or_else(|| heuristic_decomposition(g));
            let width = td.width();
            solved(algo, gamma_i_treewidth(g, &td, args.width_ceiling)?, json!({ "width": width }))
        }
        Algo::Exact => {
            let (v, c, stats) = gamma_i_exact_with(g, args.beta);
            solved(algo, (v, c), serde_json::to_value(stats)?)
        }
        Algo::Oracle => solved(algo, gamma_i_oracle(g), Value::Null),
    })
}

fn finish_cograph(g: &Graph, side: &SideArtifacts, result: (usize, DominationCertificate)) -> Result<Solved> {
    if side.cotree.as_ref().is_some_and(|t| gamma_i_cotree(t) != result.0) {
        bail!("cotree value disagrees with the recognized cotree");
    }
    let components = g.connected_components().len();
    Ok(solved(Algo::Cograph, result, json!({ "components": components })))
}

fn finish_dh(g: &Graph, seq: &PruningSequence) -> Result<Solved> {
    let d = build_dh_decomposition(g, seq)?;
    Ok(solved(Algo::Dh, gamma_i_dh(g, &d), json!({ "decomposition_nodes": d.nodes().len() })))
}

#[derive(Default)]
struct SideArtifacts {
    cotree: Option<Cotree>,
    pruning: Option<PruningSequence>,
    diagram: Option<PermutationDiagram>,
    td: Option<TreeDecomposition>,
}

impl SideArtifacts {
    fn gather(args: &GammaIArgs, loaded: &Loaded) -> Result<Self> {
        let mut side = SideArtifacts::default();
        match &loaded.artifact {
            Some(Artifact::Cotree(t)) => side.cotree = Some(t.clone()),
            Some(Artifact::Pruning(s)) => side.pruning = Some(s.clone()),
            Some(Artifact::Diagram(d)) => side.diagram = Some(d.clone()),
            None => {}
        }
        if let Some(p) = &args.cotree {
            side.cotree = Some(read_artifact(p, Cotree::parse)?);
        }
        if let Some(p) = &args.pruning {
            side.pruning = Some(read_artifact(p, PruningSequence::parse)?);
        }
        if let Some(p) = &args.diagram {
            side.diagram = Some(read_artifact(p, PermutationDiagram::parse)?);
        }
        if let Some(p) = &args.td {
            side.td = Some(read_artifact(p, TreeDecomposition::parse_pace)?);
        }
        let g = &loaded.graph;
        if side.cotree.as_ref().is_some_and(|t| &t.to_graph() != g) {
            bail!("cotree does not describe the input graph");
        }
        if side.pruning.as_ref().is_some_and(|s| &s.replay() != g) {
            bail!("pruning sequence does not rebuild the input graph");
        }
        if side.diagram.as_ref().is_some_and(|d| &d.to_graph() != g) {
            bail!("diagram crossings differ from the input graph");
        }
        if let Some(td) = &side.td {
            td.validate(g)?;
        }
        Ok(side)
    }
}

/// cograph → distance-hereditary → permutation (diagram given) → treewidth
/// (decomposition given or width within the ceiling) → exact.
fn dispatch(g: &Graph, side: &SideArtifacts, args: &GammaIArgs) -> Result<Solved> {
    match gamma_i_cograph(g) {
        Ok(r) => return finish_cograph(g, side, r),
        Err(Error::NotCograph(_)) => {}
        Err(e) => return Err(e.into()),
    }
    if let Some(seq) = side.pruning.clone().or_else(|| recognize_dh(g).ok()) {
        return finish_dh(g, &seq);
    }
    if side.diagram.is_some() {
        return run_algo(Algo::Permutation, g, side, args);
    }
    let fits = side.td.as_ref().map_or_else(|| heuristic_decomposition(g).width(), |td| td.width())
        <= args.width_ceiling.min(30);
    if fits {
        return run_algo(Algo::Treewidth, g, side, args);
    }
    run_algo(Algo::Exact, g, side, args)
}

fn verify_cert(g: &Graph, cert: &DominationCertificate, value: usize) -> std::result::Result<(), String> {
    cert.verify(g).map_err(|e| e.to_string())?;
    if cert.value != value {
        return Err(format!("certificate value {} differs from reported {value}", cert.value));
    }
    let a = g.set(cert.independent_set.iter().copied());
    let (need, _) = gamma_of_set(g, &a);
    if need != value {
        return Err(format!("independent set needs {need} dominators, reported {value}"));
    }
    Ok(())
}

/// Fills `verified` and `verify_error` and returns whether the check passed.
fn certify(g: &Graph, cert: &DominationCertificate, value: usize) -> (Option<bool>, Option<String>) {
    match verify_cert(g, cert, value) {
        Ok(()) => (Some(true), None),
        Err(e) => (Some(false), Some(e)),
    }
}

fn cmd_gamma_i(args: GammaIArgs) -> Result<bool> {
    let t0 = Instant::now();
    let loaded = load(&args.input)?;
    let side = SideArtifacts::gather(&args, &loaded)?;
    let load_ms = ms(t0);
    let g = &loaded.graph;
    let t1 = Instant::now();
    let out = match args.algo {
        Algo::Auto => dispatch(g, &side, &args)?,
        forced => run_algo(forced, g, &side, &args)?,
    };
    let solve_ms = ms(t1);
    let (verified, verify_error) =
        if args.certify { certify(g, &out.certificate, out.value) } else { (None, None) };
    emit(&RunReport {
        input: loaded.descriptor,
        n: g.n(),
        m: g.m(),
        algo: out.algo,
        value: out.value,
        certificate: Some(out.certificate),
        timings_ms: json!({ "load": load_ms, "solve": solve_ms }),
        stats: out.stats,
        verified,
        verify_error,
    })?;
    Ok(verified != Some(false))
}

fn cmd_oracle(args: OracleArgs) -> Result<bool> {
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let t = Instant::now();
    let (query, value, set, cert) = match args.query {
        OracleQuery::Gamma => {
            let (v, d) = gamma(g);
            ("gamma", v, Some(d.to_vec()), None)
        }
        OracleQuery::GammaSet => {
            if let Some(&v) = args.set.iter().find(|&&v| v >= g.n()) {
                bail!("vertex {v} outside 0..{}", g.n());
            }
            let (v, d) = gamma_of_set(g, &g.set(args.set.iter().copied()));
            ("gamma-set", v, Some(d.to_vec()), None)
        }
        OracleQuery::GammaI => {
            let (v, c) = gamma_i_oracle(g);
            ("gamma-i", v, None, Some(c))
        }
    };
    let elapsed = ms(t);
    let mut ok = true;
    let mut verified = None;
    if args.certify {
        let check = match (&cert, &set) {
            (Some(c), _) => verify_cert(g, c, value).is_ok(),
            (None, Some(d)) => {
                let target = match args.query {
                    OracleQuery::Gamma => g.vertex_set(),
                    _ => g.set(args.set.iter().copied()),
                };
                d.len() == value && g.dominates(&g.set(d.iter().copied()), &target)
            }
            (None, None) => true,
        };
        ok = check;
        verified = Some(check);
    }
    emit(&json!({
        "input": loaded.descriptor,
        "n": g.n(),
        "m": g.m(),
        "query": query,
        "value": value,
        "dominating_set": set,
        "certificate": cert,
        "timings_ms": { "solve": elapsed },
        "verified": verified,
    }))?;
    Ok(ok)
}

fn cmd_exact(args: ExactArgs) -> Result<bool> {
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let t = Instant::now();
    let (value, cert, stats) = gamma_i_exact_with(g, args.beta);
    let solve_ms = ms(t);
    let (verified, verify_error) = if args.certify { certify(g, &cert, value) } else { (None, None) };
    emit(&RunReport {
        input: loaded.descriptor,
        n: g.n(),
        m: g.m(),
        algo: Algo::Exact,
        value,
        certificate: Some(cert),
        timings_ms: json!({ "solve": solve_ms }),
        stats: json!({ "beta": args.beta, "branching": stats }),
        verified,
        verify_error,
    })?;
    Ok(verified != Some(false))
}

fn cmd_ptas(args: PtasArgs) -> Result<bool> {
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    if let Some(&v) = args.root.iter().find(|&&v| v >= g.n()) {
        bail!("root {v} outside 0..{}", g.n());
    }
    let opts = PtasOptions {
        roots: (!args.root.is_empty()).then(|| g.set(args.root.iter().copied())),
        width_ceiling: args.width_ceiling,
    };
    let t = Instant::now();
    let r = ptas_gamma_i(g, args.epsilon, &opts)?;
    let solve_ms = ms(t);
    let (verified, verify_error) =
        if args.certify { certify(g, &r.certificate, r.value) } else { (None, None) };
    emit(&json!({
        "input": loaded.descriptor,
        "n": g.n(),
        "m": g.m(),
        "algo": "ptas",
        "epsilon": args.epsilon,
        "result": r,
        "timings_ms": { "solve": solve_ms },
        "verified": verified,
        "verify_error": verify_error,
    }))?;
    Ok(verified != Some(false))
}

fn cmd_gen(args: GenArgs) -> Result<bool> {
    let spec: GraphSpec = args.spec.parse()?;
    let format: Format = args.format.parse()?;
    let out = generate(&spec, args.seed)?;
    print!("{}", serialize(&out.graph, format));
    if let Some(path) = &args.artifact {
        let text = match &out.artifact {
            Some(Artifact::Cotree(t)) => t.to_text(),
            Some(Artifact::Pruning(s)) => s.to_text(),
            Some(Artifact::Diagram(d)) => d.to_text(),
            None => bail!("{spec} has no class artifact"),
        };
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::GammaI(a) => cmd_gamma_i(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Ptas(a) => cmd_ptas(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => suites::cmd_verify(a),
        Command::ProductCheck(a) => suites::cmd_product_check(a),
        Command::Bench(a) => bench::cmd_bench(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
