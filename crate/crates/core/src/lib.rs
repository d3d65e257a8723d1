//! Independence-domination number γⁱ(G): the maximum, over independent sets
//! `A`, of the fewest vertices needed to dominate `A`.
//!
//! Exact solvers for cographs, distance-hereditary graphs, permutation
//! graphs and bounded-treewidth graphs, an exact exponential algorithm for
//! arbitrary graphs, a shifting scheme for planar graphs, and a brute-force
//! oracle that every solver is checked against.

pub mod bitset;
pub mod certificate;
pub mod cograph;
pub mod dh;
pub mod error;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod permutation;
pub mod ptas;
pub mod treewidth;

pub use bitset::VertexSet;
pub use certificate::DominationCertificate;
pub use error::{Error, Result};
pub use graph::Graph;
