//! Exact γⁱ for arbitrary graphs.
//!
//! Every maximal independent set `M` is scored. Small sets go through a
//! branching procedure: only edges between `M` and the rest matter, and
//! while some outside vertex has three or more undominated `M`-neighbors
//! we branch on taking or discarding it. Once every outside vertex sees at
//! most two, each dominator covers one or two vertices of `M`, so the
//! optimum is `|M| - ν(H)` where `H` joins two `M` vertices sharing an
//! outside neighbor. Large sets are scored by enumerating subsets of the
//! (small) outside in increasing size.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::for_each_maximal_independent_set;

/// Size threshold, as a fraction of `n`, between branching and subset
/// enumeration.
pub const BETA: f64 = 0.6827;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BranchStats {
    pub nodes: u64,
    pub max_depth: u32,
    pub matching_calls: u64,
    pub subset_calls: u64,
}

impl BranchStats {
    fn absorb(&mut self, o: &BranchStats) {
        self.nodes += o.nodes;
        self.max_depth = self.max_depth.max(o.max_depth);
        self.matching_calls += o.matching_calls;
        self.subset_calls += o.subset_calls;
    }
}

/// Maximum matching in a general graph (Edmonds' blossom algorithm).
/// Returns the matched pairs `(u, v)` with `u < v`.
pub fn maximum_matching(h: &Graph) -> Vec<(usize, usize)> {
    let n = h.n();
    let mut mate = vec![usize::MAX; n];
    // Greedy start.
    for u in 0..n {
        if mate[u] == usize::MAX {
            if let Some(&v) = h.neighbors(u).iter().find(|&&v| mate[v] == usize::MAX) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut search = Blossom::new(n);
    for root in 0..n {
        if mate[root] == usize::MAX {
            if let Some(end) = search.augmenting_path(h, &mate, root) {
                let mut v = end;
                while v != usize::MAX {
                    let pv = search.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    (0..n).filter(|&u| mate[u] != usize::MAX && u < mate[u]).map(|u| (u, mate[u])).collect()
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Self {
            parent: vec![usize::MAX; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Finds an augmenting path from `root`; returns its free endpoint.
    fn augmenting_path(&mut self, h: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = h.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = usize::MAX);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in h.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != usize::MAX && self.parent[mate[to]] != usize::MAX) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == usize::MAX {
                    self.parent[to] = v;
                    if mate[to] == usize::MAX {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    self.queue.push(m);
                }
            }
        }
        None
    }
}

/// Matching number by trying every edge subset; for cross-checks on small
/// graphs.
pub fn maximum_matching_brute(h: &Graph) -> usize {
    fn go(edges: &[(usize, usize)], used: &mut Vec<bool>, i: usize) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(edges, used, i + 1);
        let (u, v) = edges[i];
        if used[u] || used[v] {
            return skip;
        }
        used[u] = true;
        used[v] = true;
        let take = 1 + go(edges, used, i + 1);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    go(&h.edges(), &mut vec![false; h.n()], 0)
}

/// `H` on the vertices of `remaining` (in increasing order): two are
/// adjacent when some vertex of `outside` neighbors both. Returns `H` and
/// the id map back to `g`.
pub fn auxiliary_matching_graph(g: &Graph, remaining: &VertexSet, outside: &VertexSet) -> (Graph, Vec<usize>) {
    let ids: Vec<usize> = remaining.iter().collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for w in outside {
        let seen: Vec<usize> = g.row(w).intersection(remaining).iter().map(|v| index[v]).collect();
        for (i, &a) in seen.iter().enumerate() {
            for &b in &seen[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    (Graph::new(ids.len(), edges).expect("auxiliary edges are in range"), ids)
}

struct Brancher<'a> {
    g: &'a Graph,
    best: usize,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
    stats: BranchStats,
}

impl Brancher<'_> {
    fn run(&mut self, mut remaining: VertexSet, mut outside: VertexSet, depth: u32) {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let pushed = self.chosen.len();

        // Outside vertices that see nothing are useless; M vertices that no
        // outside vertex sees must dominate themselves.
        let mut reach = VertexSet::new(self.g.n());
        for w in outside.clone().iter() {
            if self.g.row(w).intersects(&remaining) {
                reach.union_with(self.g.row(w));
            } else {
                outside.remove(w);
            }
        }
        for v in remaining.difference(&reach).iter() {
            self.chosen.push(v);
            remaining.remove(v);
        }

        let degree = |w: usize| self.g.row(w).intersection_len(&remaining);
        let (max_deg, pick) = outside
            .iter()
            .map(|w| (degree(w), std::cmp::Reverse(w)))
            .max()
            .map_or((0, usize::MAX), |(d, w)| (d, w.0));
        let lower = if remaining.is_empty() { 0 } else { remaining.len().div_ceil(max_deg.max(1)) };
        if self.chosen.len() + lower >= self.best {
            self.chosen.truncate(pushed);
            return;
        }

        if max_deg < 3 {
            self.leaf(&remaining, &outside);
        } else {
            let x = pick;
            outside.remove(x);
            self.chosen.push(x);
            self.run(remaining.difference(self.g.row(x)), outside.clone(), depth + 1);
            self.chosen.pop();
            self.run(remaining, outside, depth + 1);
        }
        self.chosen.truncate(pushed);
    }

    fn leaf(&mut self, remaining: &VertexSet, outside: &VertexSet) {
        self.stats.matching_calls += 1;
        let (h, ids) = auxiliary_matching_graph(self.g, remaining, outside);
        let matching = maximum_matching(&h);
        let mut cover: Vec<usize> = Vec::with_capacity(remaining.len() - matching.len());
        let mut matched = VertexSet::new(self.g.n());
        for &(a, b) in &matching {
            let (u, v) = (ids[a], ids[b]);
            matched.insert(u);
            matched.insert(v);
            let w = outside
                .iter()
                .find(|&w| self.g.has_edge(w, u) && self.g.has_edge(w, v))
                .expect("matched pair has a common outside neighbor");
            cover.push(w);
        }
        for u in remaining.difference(&matched).iter() {
            let w = outside.iter().find(|&w| self.g.has_edge(w, u)).expect("every remaining vertex is reachable");
            cover.push(w);
        }
        let value = self.chosen.len() + cover.len();
        debug_assert_eq!(value, self.chosen.len() + remaining.len() - matching.len());
        if value < self.best {
            self.best = value;
            self.best_set = self.chosen.iter().chain(&cover).copied().collect();
        }
    }
}

fn check_independent(g: &Graph, m: &VertexSet) -> Result<()> {
    match g.independence_violation(m) {
        Some((u, v)) => Err(Error::NotIndependent(u, v)),
        None => Ok(()),
    }
}

/// γ(M) for an independent set `M` by branching down to the matching case.
pub fn gamma_of_independent_set_fast(g: &Graph, m: &VertexSet) -> Result<(usize, VertexSet, BranchStats)> {
    check_independent(g, m)?;
    let mut b = Brancher {
        g,
        best: m.len() + 1,
        best_set: Vec::new(),
        chosen: Vec::new(),
        stats: BranchStats::default(),
    };
    b.run(m.clone(), m.complement(), 0);
    let witness = g.set(b.best_set.iter().copied());
    Ok((b.best, witness, b.stats))
}

/// `|M∖W| + ν(H)` for an independent `M` in which no outside vertex has
/// more than two neighbors in `M`; `W` is the set of matched vertices and
/// vertices of `M` without outside neighbors dominate themselves.
pub fn gamma_by_matching(g: &Graph, m: &VertexSet) -> Result<usize> {
    check_independent(g, m)?;
    let outside = m.complement();
    if let Some(w) = outside.iter().find(|&w| g.row(w).intersection_len(m) > 2) {
        return Err(Error::Invalid(format!("vertex {w} has more than two neighbors in the set")));
    }
    let (h, _) = auxiliary_matching_graph(g, m, &outside);
    let nu = maximum_matching(&h).len();
    let unmatched = m.len() - 2 * nu;
    Ok(unmatched + nu)
}

/// γ(M) by trying subsets of the outside in increasing size. Vertices of
/// `M` without outside neighbors are always taken.
pub fn gamma_of_independent_set_subsets(g: &Graph, m: &VertexSet) -> Result<(usize, VertexSet)> {
    check_independent(g, m)?;
    let outside = m.complement();
    let mut forced = g.empty_set();
    for v in m {
        if !g.row(v).intersects(&outside) {
            forced.insert(v);
        }
    }
    let target = m.difference(&forced);
    let pool: Vec<usize> = outside.iter().filter(|&w| g.row(w).intersects(&target)).collect();
    for k in 0..=pool.len() {
        if let Some(pick) = first_cover(g, &pool, &target, k) {
            let mut d = forced.clone();
            for i in pick {
                d.insert(pool[i]);
            }
            return Ok((d.len(), d));
        }
    }
    unreachable!("the whole pool dominates the target")
}

fn first_cover(g: &Graph, pool: &[usize], target: &VertexSet, k: usize) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut covered = VertexSet::new(g.n());
        for &i in &idx {
            covered.union_with(g.row(pool[i]));
        }
        if target.is_subset(&covered) {
            return Some(idx);
        }
        // Next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < pool.len() - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// γⁱ(G) with a certificate and counters, using [`BETA`].
pub fn gamma_i_exact(g: &Graph) -> (usize, DominationCertificate, BranchStats) {
    gamma_i_exact_with(g, BETA)
}

pub fn gamma_i_exact_with(g: &Graph, beta: f64) -> (usize, DominationCertificate, BranchStats) {
    let limit = beta * g.n() as f64;
    let mut stats = BranchStats::default();
    let mut best = 0;
    let mut cert = DominationCertificate::empty();
    for_each_maximal_independent_set(g, |m| {
        let (value, witness) = if m.len() as f64 <= limit {
            let (v, w, s) = gamma_of_independent_set_fast(g, m).expect("maximal sets are independent");
            stats.absorb(&s);
            (v, w)
        } else {
            stats.subset_calls += 1;
            gamma_of_independent_set_subsets(g, m).expect("maximal sets are independent")
        };
        if value > best {
            best = value;
            cert = DominationCertificate::new(m, &witness);
        }
        ControlFlow::Continue(())
    });
    (best, cert, stats)
}
