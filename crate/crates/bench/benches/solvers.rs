use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indom_bench::{cotree, diagram, graph};
use indom_core::cograph::{gamma_cograph, gamma_i_cotree};
use indom_core::dh;
use indom_core::exact::gamma_i_exact;
use indom_core::gen::{self, GraphSpec};
use indom_core::permutation::gamma_i_permutation;
use indom_core::treewidth::{solve, DEFAULT_WIDTH_CEILING};

fn cograph(c: &mut Criterion) {
    let mut group = c.benchmark_group("cograph");
    for n in [1_000, 10_000, 100_000] {
        let t = cotree(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| gamma_cograph(black_box(t)) + gamma_i_cotree(black_box(t)))
        });
    }
    group.finish();
}

fn distance_hereditary(c: &mut Criterion) {
    let mut group = c.benchmark_group("dh");
    group.sample_size(10);
    for n in [100, 250, 500] {
        let g = graph(GraphSpec::RandomDh(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| dh::solve(black_box(g))));
    }
    group.finish();
}

fn permutation(c: &mut Criterion) {
    let mut group = c.benchmark_group("permutation");
    for n in [50, 100, 200] {
        let d = diagram(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| gamma_i_permutation(black_box(d))));
    }
    group.finish();
}

fn treewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("treewidth");
    group.sample_size(10);
    for (r, cols) in [(4, 4), (4, 5), (5, 5)] {
        let g = gen::grid(r, cols);
        group.bench_with_input(BenchmarkId::new("grid", format!("{r}x{cols}")), &g, |b, g| {
            b.iter(|| solve(black_box(g), DEFAULT_WIDTH_CEILING))
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for p in [0.1, 0.3, 0.5] {
        let g = graph(GraphSpec::Gnp { n: 30, p });
        group.bench_with_input(BenchmarkId::new("gnp30", p), &g, |b, g| b.iter(|| gamma_i_exact(black_box(g))));
    }
    group.finish();
}

criterion_group!(benches, cograph, distance_hereditary, permutation, treewidth, exact);
criterion_main!(benches);
