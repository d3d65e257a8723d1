use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Witness `(A, D)` for a reported independence-domination value: `A` is
/// independent and `D` dominates it with `value = |D|` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationCertificate {
    pub independent_set: Vec<usize>,
    pub dominating_set: Vec<usize>,
    pub value: usize,
}

impl DominationCertificate {
    pub fn new(independent_set: &VertexSet, dominating_set: &VertexSet) -> Self {
        Self {
            independent_set: independent_set.to_vec(),
            dominating_set: dominating_set.to_vec(),
            value: dominating_set.len(),
        }
    }

    pub fn empty() -> Self {
        Self {
            independent_set: Vec::new(),
            dominating_set: Vec::new(),
            value: 0,
        }
    }

    /// Replays the certificate against `g` using only graph-level checks.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if let Some(&v) = self
            .independent_set
            .iter()
            .chain(&self.dominating_set)
            .find(|&&v| v >= n)
        {
            return Err(Error::Invalid(format!("certificate vertex {v} out of range")));
        }
        let a = g.set(self.independent_set.iter().copied());
        let d = g.set(self.dominating_set.iter().copied());
        if a.len() != self.independent_set.len() || d.len() != self.dominating_set.len() {
            return Err(Error::Invalid("certificate lists a vertex twice".into()));
        }
        if let Some((u, v)) = g.independence_violation(&a) {
            return Err(Error::NotIndependent(u, v));
        }
        if !g.dominates(&d, &a) {
            return Err(Error::Invalid("dominating set misses part of the independent set".into()));
        }
        if d.len() != self.value {
            return Err(Error::Invalid(format!(
                "value {} differs from |D| = {}",
                self.value,
                d.len()
            )));
        }
        Ok(())
    }
}
