//! Median wall-clock timings, one JSON line per measured instance.

use std::time::Instant;

use anyhow::Result;
use clap::{Args, ValueEnum};
use indom_core::cograph::{gamma_cograph, gamma_i_cotree};
use indom_core::dh;
use indom_core::exact::gamma_i_exact;
use indom_core::gen::{self, generate, Artifact, GraphSpec};
use indom_core::permutation::gamma_i_permutation;
use indom_core::treewidth::{solve as treewidth_solve, DEFAULT_WIDTH_CEILING};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::emit;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchSuite {
    Cograph,
    Dh,
    Permutation,
    Treewidth,
    Exact,
    All,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchSuite::All)]
    suite: BenchSuite,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn median_ms(reps: usize, mut f: impl FnMut() -> usize) -> (f64, usize) {
    let mut value = 0;
    let mut times: Vec<f64> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            value = f();
            t.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    times.sort_by(f64::total_cmp);
    (times[times.len() / 2], value)
}

/// Least-squares slope of `ln t` against `ln n`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0.ln()).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1.ln()).sum::<f64>() / k;
    let num: f64 = points.iter().map(|p| (p.0.ln() - mx) * (p.1.ln() - my)).sum();
    let den: f64 = points.iter().map(|p| (p.0.ln() - mx).powi(2)).sum();
    num / den
}

fn line(suite: &str, instance: &str, n: usize, median: f64, value: usize, reps: usize) -> Result<()> {
    emit(&json!({ "suite": suite, "instance": instance, "n": n, "median_ms": median, "value": value, "reps": reps }))
}

pub fn cmd_bench(args: BenchArgs) -> Result<bool> {
    let all = args.suite == BenchSuite::All;
    let reps = args.reps;
    if all || args.suite == BenchSuite::Cograph {
        let t = gen::random_cotree(100_000, &mut ChaCha8Rng::seed_from_u64(args.seed));
        let (ms, v) = median_ms(reps, || gamma_cograph(&t) + gamma_i_cotree(&t));
        line("cograph", "random_cotree(100000), gamma + gamma_i", 100_000, ms, v, reps)?;
    }
    if all || args.suite == BenchSuite::Dh {
        let mut points = Vec::new();
        for n in [250, 500, 1000, 2000] {
            let g = generate(&GraphSpec::RandomDh(n), args.seed)?.graph;
            let (ms, v) = median_ms(reps, || dh::solve(&g).map(|r| r.0).unwrap_or(usize::MAX));
            line("dh", &format!("random_dh({n}), recognition included"), n, ms, v, reps)?;
            points.push((n as f64, ms));
        }
        emit(&json!({ "suite": "dh", "loglog_exponent": loglog_slope(&points) }))?;
    }
    if all || args.suite == BenchSuite::Permutation {
        for n in [100, 200, 400] {
            let out = generate(&GraphSpec::RandomPermutation(n), args.seed)?;
            let Some(Artifact::Diagram(d)) = out.artifact else { unreachable!("permutation generator emits a diagram") };
            let (ms, v) = median_ms(reps, || gamma_i_permutation(&d).0);
            line("permutation", &format!("random_permutation({n})"), n, ms, v, reps)?;
        }
    }
    if all || args.suite == BenchSuite::Treewidth {
        for (r, c) in [(4, 4), (5, 5), (6, 6)] {
            let g = gen::grid(r, c);
            let (ms, v) = median_ms(reps, || treewidth_solve(&g, DEFAULT_WIDTH_CEILING).map(|x| x.0).unwrap_or(usize::MAX));
            line("treewidth", &format!("grid({r},{c})"), r * c, ms, v, reps)?;
        }
    }
    if all || args.suite == BenchSuite::Exact {
        for p in [0.1, 0.2, 0.3, 0.5] {
            let g = generate(&GraphSpec::Gnp { n: 30, p }, args.seed)?.graph;
            let (ms, v) = median_ms(reps, || gamma_i_exact(&g).0);
            line("exact", &format!("gnp(30,{p})"), 30, ms, v, reps)?;
        }
    }
    Ok(true)
}
