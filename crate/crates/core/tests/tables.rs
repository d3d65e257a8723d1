mod common;

use indom_core::dh::{build_dh_decomposition, dh_tables};
use indom_core::gen::{generate, Artifact, GraphSpec};
use indom_core::permutation::{gamma_sets, Recurrence};
use indom_core::treewidth::{heuristic_decomposition, make_nice, node_tables};

#[test]
fn dh_tables_match_brute_force() {
    for seed in 0..30 {
        let n = 1 + seed as usize % 10;
        let g = generate(&GraphSpec::RandomDh(n), 100 + seed).unwrap();
        let Some(Artifact::Pruning(s)) = g.artifact else { panic!() };
        let d = build_dh_decomposition(&g.graph, &s).unwrap();
        common::check_dh_tables(&g.graph, &d, &dh_tables(&d)).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn treewidth_tables_match_brute_force() {
    for seed in 0..25 {
        let n = 1 + seed as usize % 9;
        let g = generate(&GraphSpec::Gnp { n, p: 0.35 }, 200 + seed).unwrap().graph;
        let nice = make_nice(&heuristic_decomposition(&g));
        common::check_tw_tables(&g, &nice, &node_tables(&g, &nice)).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn anchored_gamma_sets_replay() {
    for seed in 0..30 {
        let n = 1 + seed as usize % 9;
        let g = generate(&GraphSpec::RandomPermutation(n), 300 + seed).unwrap();
        let Some(Artifact::Diagram(d)) = g.artifact else { panic!() };
        common::check_gamma_sets(&d, &gamma_sets(&d, Recurrence::Anchored))
            .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}
