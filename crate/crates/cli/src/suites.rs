//! Cross-validation against the oracle and the product-inequality sweep.

use std::time::Instant;

use anyhow::Result;
use clap::{Args, ValueEnum};
use indom_core::cograph::{gamma_cograph, gamma_i_cograph};
use indom_core::dh::{build_dh_decomposition, gamma_i_dh};
use indom_core::exact::gamma_i_exact;
use indom_core::gen::{generate, Artifact, GraphSpec};
use indom_core::oracle::{gamma, gamma_i_oracle, gamma_of_set};
use indom_core::permutation::gamma_i_permutation;
use indom_core::treewidth::{solve as treewidth_solve, DEFAULT_WIDTH_CEILING};
use indom_core::Graph;
use serde_json::json;

use crate::emit;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cograph,
    Dh,
    Permutation,
    Treewidth,
    Exact,
    Chordal,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Cograph => "cograph",
            Suite::Dh => "dh",
            Suite::Permutation => "permutation",
            Suite::Treewidth => "treewidth",
            Suite::Exact => "exact",
            Suite::Chordal => "chordal",
            Suite::All => "all",
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 300)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest instance size; the oracle is exponential.
    #[arg(long, env = "INDOM_ORACLE_CEILING", default_value_t = 14)]
    max_n: usize,
}

/// Named comparisons of a solver value against its reference value.
type Checks = Vec<(&'static str, usize, usize)>;

fn instance(suite: Suite, n: usize, seed: u64) -> Result<(GraphSpec, Graph, Checks)> {
    let spec = match suite {
        Suite::Cograph => GraphSpec::RandomCograph(n),
        Suite::Dh => GraphSpec::RandomDh(n),
        Suite::Permutation => GraphSpec::RandomPermutation(n),
        Suite::Chordal => GraphSpec::RandomChordal(n),
        Suite::Treewidth | Suite::Exact => GraphSpec::Gnp { n, p: [0.15, 0.3, 0.5][seed as usize % 3] },
        Suite::All => unreachable!("expanded by the caller"),
    };
    let out = generate(&spec, seed)?;
    let g = out.graph;
    let want = gamma_i_oracle(&g).0;
    let checks = match (suite, out.artifact) {
        (Suite::Cograph, Some(Artifact::Cotree(t))) => vec![
            ("gamma", gamma_cograph(&t), gamma(&g).0),
            ("gamma_i", gamma_i_cograph(&g)?.0, want),
            ("components", g.connected_components().len(), want),
        ],
        (Suite::Dh, Some(Artifact::Pruning(s))) => {
            vec![("gamma_i", gamma_i_dh(&g, &build_dh_decomposition(&g, &s)?).0, want)]
        }
        (Suite::Permutation, Some(Artifact::Diagram(d))) => vec![("gamma_i", gamma_i_permutation(&d).0, want)],
        (Suite::Chordal, _) => vec![("gamma_equals_gamma_i", gamma(&g).0, want)],
        (Suite::Treewidth, _) => vec![("gamma_i", treewidth_solve(&g, DEFAULT_WIDTH_CEILING)?.0, want)],
        (Suite::Exact, _) => vec![("gamma_i", gamma_i_exact(&g).0, want)],
        _ => unreachable!("class generators emit their artifact"),
    };
    Ok((spec, g, checks))
}

pub fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let suites = match args.suite {
        Suite::All => vec![Suite::Cograph, Suite::Dh, Suite::Permutation, Suite::Treewidth, Suite::Exact, Suite::Chordal],
        one => vec![one],
    };
    let mut clean = true;
    for suite in suites {
        let start = Instant::now();
        let mut mismatches = 0;
        for i in 0..args.count {
            let n = 1 + i as usize % args.max_n.max(1);
            let seed = args.seed.wrapping_add(i);
            let (spec, g, checks) = instance(suite, n, seed)?;
            let failed: Vec<_> = checks.iter().filter(|c| c.1 != c.2).collect();
            if !failed.is_empty() {
                mismatches += 1;
                let detail: Vec<_> =
                    failed.iter().map(|(what, got, want)| json!({ "check": what, "solver": got, "oracle": want })).collect();
                emit(&json!({
                    "suite": suite.name(),
                    "mismatch": { "spec": spec.to_string(), "seed": seed, "checks": detail, "edges": g.edges() },
                }))?;
            }
        }
        clean &= mismatches == 0;
        emit(&json!({
            "suite": suite.name(),
            "instances": args.count,
            "agree": args.count - mismatches,
            "mismatches": mismatches,
            "ms": start.elapsed().as_secs_f64() * 1e3,
        }))?;
    }
    Ok(clean)
}

const DEFAULT_CORPUS: [&str; 10] = [
    "complete(1)",
    "complete(2)",
    "path(3)",
    "complete(3)",
    "cycle(4)",
    "path(4)",
    "star(3)",
    "cycle(5)",
    "complete_multipartite(2,3)",
    "path(6)",
];

#[derive(Args)]
pub struct ProductArgs {
    /// Factor descriptors; defaults to a ten-graph corpus.
    specs: Vec<String>,
    /// Largest factor size.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
}

pub fn cmd_product_check(args: ProductArgs) -> Result<bool> {
    let specs: Vec<String> = if args.specs.is_empty() {
        DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect()
    } else {
        args.specs
    };
    let mut factors = Vec::new();
    for s in &specs {
        let spec: GraphSpec = s.parse()?;
        let g = generate(&spec, 0)?.graph;
        anyhow::ensure!(g.n() <= args.max_n, "{s} has {} vertices, above --max-n {}", g.n(), args.max_n);
        let (gi, cert) = gamma_i_oracle(&g);
        let witness = g.set(cert.independent_set.iter().copied());
        factors.push((s.clone(), gamma(&g).0, gi, witness, g));
    }
    let mut violations = 0;
    for (gs, gg, gig, ag, g) in &factors {
        for (hs, gh, gih, ah, h) in &factors {
            let p = g.cartesian_product(h)?;
            let gp = gamma(&p).0;
            // The product of the two witnesses is independent in G□H, so its
            // domination number is a lower bound on γⁱ(G□H).
            let lifted = p.set(ag.iter().flat_map(|a| ah.iter().map(move |b| a * h.n() + b)));
            let mut gip_lower = gamma_of_set(&p, &lifted).0;
            if gip_lower < gig * gih {
                gip_lower = gamma_i_oracle(&p).0;
            }
            let vizing_type = gp >= gig * gh;
            let suen_tarr = 2 * gp >= gg * gh + gg.min(gh);
            let independent = gip_lower >= gig * gih;
            let ok = vizing_type && suen_tarr && independent;
            violations += usize::from(!ok);
            emit(&json!({
                "g": gs,
                "h": hs,
                "gamma_product": gp,
                "gamma_i_product_at_least": gip_lower,
                "gamma_g": gg,
                "gamma_h": gh,
                "gamma_i_g": gig,
                "gamma_i_h": gih,
                "gamma_product_vs_gamma_i_times_gamma": vizing_type,
                "suen_tarr": suen_tarr,
                "gamma_i_product": independent,
            }))?;
        }
    }
    emit(&json!({ "pairs": factors.len() * factors.len(), "violations": violations }))?;
    Ok(violations == 0)
}
