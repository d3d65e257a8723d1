//! Brute-force ground truth: γ(B), γ(G), γⁱ(G) and maximal independent set
//! enumeration. Every class solver is checked against this module.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::graph::Graph;

/// Largest graph the exhaustive subset scan accepts.
pub const EXHAUSTIVE_MAX_N: usize = 24;

struct Search<'a> {
    closed: &'a [VertexSet],
    best: usize,
    best_set: Option<Vec<usize>>,
    chosen: Vec<usize>,
    // Stop at the first solution of size < best.
    first_only: bool,
    done: bool,
}

impl Search<'_> {
    fn run(&mut self, undominated: &VertexSet, allowed: &VertexSet) {
        if self.done {
            return;
        }
        if undominated.is_empty() {
            if self.chosen.len() < self.best {
                self.best = self.chosen.len();
                self.best_set = Some(self.chosen.clone());
                self.done = self.first_only;
            }
            return;
        }
        if self.chosen.len() + 1 >= self.best {
            return;
        }

        let mut max_cover = 0;
        for v in allowed {
            max_cover = max_cover.max(self.closed[v].intersection_len(undominated));
        }
        if max_cover == 0 {
            return;
        }
        let lower = undominated.len().div_ceil(max_cover);
        if self.chosen.len() + lower >= self.best {
            return;
        }

        // Target: the undominated vertex with the fewest candidate dominators.
        let mut target = usize::MAX;
        let mut fewest = usize::MAX;
        for u in undominated {
            let c = self.closed[u].intersection_len(allowed);
            if c < fewest {
                fewest = c;
                target = u;
            }
        }
        if fewest == 0 {
            return;
        }

        let mut candidates: Vec<(usize, usize)> = self.closed[target]
            .intersection(allowed)
            .iter()
            .map(|c| (self.closed[c].intersection_len(undominated), c))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        // Branch i takes candidate i and excludes candidates 0..i.
        let mut allowed = allowed.clone();
        for (_, c) in candidates {
            allowed.remove(c);
            self.chosen.push(c);
            self.run(&undominated.difference(&self.closed[c]), &allowed);
            self.chosen.pop();
            if self.done {
                return;
            }
        }
    }
}

fn closed_rows(g: &Graph) -> Vec<VertexSet> {
    (0..g.n()).map(|v| g.closed_row(v)).collect()
}

/// γ_G(B) by branch and bound, with a minimum witness.
pub fn gamma_of_set(g: &Graph, b: &VertexSet) -> (usize, VertexSet) {
    let closed = closed_rows(g);
    let mut s = Search {
        closed: &closed,
        best: b.len(),
        best_set: None,
        chosen: Vec::new(),
        first_only: false,
        done: false,
    };
    s.run(b, &g.vertex_set());
    let witness = match s.best_set {
        Some(v) => g.set(v),
        None => b.clone(),
    };
    (witness.len(), witness)
}

/// A set of at most `limit` vertices dominating `b`, if one exists.
pub fn dominating_set_within(g: &Graph, b: &VertexSet, limit: usize) -> Option<VertexSet> {
    if b.len() <= limit {
        return Some(b.clone());
    }
    let closed = closed_rows(g);
    let mut s = Search {
        closed: &closed,
        best: limit + 1,
        best_set: None,
        chosen: Vec::new(),
        first_only: true,
        done: false,
    };
    s.run(b, &g.vertex_set());
    s.best_set.map(|v| g.set(v))
}

/// γ_G(B) by scanning all vertex subsets. Independent of the branch and
/// bound; limited to [`EXHAUSTIVE_MAX_N`] vertices.
pub fn gamma_of_set_exhaustive(g: &Graph, b: &VertexSet) -> (usize, VertexSet) {
    let n = g.n();
    assert!(n <= EXHAUSTIVE_MAX_N, "exhaustive scan limited to {EXHAUSTIVE_MAX_N} vertices");
    let closed: Vec<u32> = (0..n)
        .map(|v| g.closed_row(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let target = b.iter().fold(0u32, |m, u| m | 1 << u);
    let mut best = (u32::MAX, 0u32);
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones();
        if size >= best.0 {
            continue;
        }
        let mut covered = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            covered |= closed[v as usize];
            rest &= rest - 1;
        }
        if target & !covered == 0 {
            best = (size, mask);
        }
    }
    let w = g.set((0..n).filter(|&v| best.1 >> v & 1 == 1));
    (w.len(), w)
}

/// γ(G).
pub fn gamma(g: &Graph) -> (usize, VertexSet) {
    gamma_of_set(g, &g.vertex_set())
}

/// Streams every maximal independent set exactly once (Bron–Kerbosch with
/// pivoting on the complement). The callback may stop the stream early.
pub fn for_each_maximal_independent_set<F>(g: &Graph, mut f: F)
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    let n = g.n();
    if n == 0 {
        let _ = f(&g.empty_set());
        return;
    }
    let non_adj: Vec<VertexSet> = (0..n).map(|v| g.closed_row(v).complement()).collect();
    let mut r = g.empty_set();
    let _ = bron_kerbosch(&non_adj, &mut r, g.vertex_set(), g.empty_set(), &mut f);
}

fn bron_kerbosch<F>(
    non_adj: &[VertexSet],
    r: &mut VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    if p.is_empty() {
        if x.is_empty() {
            return f(r);
        }
        return ControlFlow::Continue(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (non_adj[u].intersection_len(&p), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let branch = p.difference(&non_adj[pivot]);
    for v in &branch {
        r.insert(v);
        let res = bron_kerbosch(
            non_adj,
            r,
            p.intersection(&non_adj[v]),
            x.intersection(&non_adj[v]),
            f,
        );
        r.remove(v);
        res?;
        p.remove(v);
        x.insert(v);
    }
    ControlFlow::Continue(())
}

pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_maximal_independent_set(g, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    });
    out
}

/// γⁱ(G) = max over maximal independent sets `M` of γ(M), with a witness.
///
/// Restricting to maximal sets is sound because γ(B) is monotone in `B`.
/// The scan stops once γ(G) is reached, and skips any `M` that is
/// dominated by no more vertices than the current best.
pub fn gamma_i_oracle(g: &Graph) -> (usize, DominationCertificate) {
    let (upper, _) = gamma(g);
    let mut best = 0usize;
    let mut cert = DominationCertificate::empty();
    for_each_maximal_independent_set(g, |m| {
        if best == upper && !m.is_empty() {
            return ControlFlow::Break(());
        }
        if dominating_set_within(g, m, best).is_some() {
            return ControlFlow::Continue(());
        }
        let (value, witness) = gamma_of_set(g, m);
        debug_assert!(value > best);
        best = value;
        cert = DominationCertificate::new(m, &witness);
        ControlFlow::Continue(())
    });
    (best, cert)
}
