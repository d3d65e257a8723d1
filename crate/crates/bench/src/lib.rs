//! Fixed benchmark instances, seeded so runs compare across commits.

use indom_core::cograph::Cotree;
use indom_core::gen::{self, generate, Artifact, GraphSpec};
use indom_core::permutation::PermutationDiagram;
use indom_core::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 2024;

pub fn graph(spec: GraphSpec) -> Graph {
    generate(&spec, SEED).expect("fixture descriptors are valid").graph
}

/// Cotree only; the cograph itself is dense enough to exhaust memory at
/// the sizes benchmarked.
pub fn cotree(n: usize) -> Cotree {
    gen::random_cotree(n, &mut ChaCha8Rng::seed_from_u64(SEED))
}

pub fn diagram(n: usize) -> PermutationDiagram {
    match generate(&GraphSpec::RandomPermutation(n), SEED).expect("valid size").artifact {
        Some(Artifact::Diagram(d)) => d,
        _ => unreachable!("permutation generator emits a diagram"),
    }
}
