//! Permutation graphs given by their diagram.
//!
//! Segment `i` joins position `top[i]` on the top line with `bottom[i]` on
//! the bottom line; two vertices are adjacent when their segments cross.
//! An independent set is a chain of pairwise parallel segments, ordered
//! left to right, and every vertex crosses a contiguous run of such a chain.
//! Dominating a chain is therefore an interval covering problem that the
//! left-to-right greedy solves exactly. The greedy opens a new block at the
//! first chain element (the *anchor*) that no neighbor of the previous
//! anchor reaches, so the state `(last element, current anchor)` carries
//! the exact domination number of every chain through the sweep.
//!
//! Diagram text format: line 1 `n`, line 2 the top positions of vertices
//! `0..n`, line 3 their bottom positions.

use std::fmt::Write as _;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::cograph::{Cotree, CotreeKind};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDiagram {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl PermutationDiagram {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::BadDiagram(format!(
                "top has {} positions, bottom has {}",
                top.len(),
                bottom.len()
            )));
        }
        if !is_permutation(&top) || !is_permutation(&bottom) {
            return Err(Error::BadDiagram("positions are not a permutation of 0..n".into()));
        }
        Ok(Self { top, bottom })
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self, v: usize) -> usize {
        self.top[v]
    }

    pub fn bottom(&self, v: usize) -> usize {
        self.bottom[v]
    }

    #[inline]
    pub fn crosses(&self, i: usize, j: usize) -> bool {
        (self.top[i] < self.top[j]) != (self.bottom[i] < self.bottom[j])
    }

    /// `i` lies entirely left of `j`.
    #[inline]
    pub fn left_of(&self, i: usize, j: usize) -> bool {
        self.top[i] < self.top[j] && self.bottom[i] < self.bottom[j]
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.crosses(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).expect("diagram vertices are in range")
    }

    /// Reverses both lines; the crossing graph is unchanged.
    pub fn mirror(&self) -> Self {
        let n = self.n();
        Self {
            top: self.top.iter().map(|&t| n - 1 - t).collect(),
            bottom: self.bottom.iter().map(|&b| n - 1 - b).collect(),
        }
    }

    /// Vertices sorted by top position.
    pub fn top_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (v, &t) in self.top.iter().enumerate() {
            order[t] = v;
        }
        order
    }

    /// Union places children side by side; join reverses the children's
    /// order on the bottom line so that every pair across children crosses.
    pub fn from_cotree(t: &Cotree) -> Self {
        let nodes = t.nodes();
        let mut top_seq: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        let mut bot_seq: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for i in (0..nodes.len()).rev() {
            match nodes[i].kind {
                CotreeKind::Leaf(v) => {
                    top_seq[i] = vec![v];
                    bot_seq[i] = vec![v];
                }
                kind => {
                    let ch = &nodes[i].children;
                    top_seq[i] = ch.iter().flat_map(|&c| std::mem::take(&mut top_seq[c])).collect();
                    let bottoms: Vec<Vec<usize>> = ch.iter().map(|&c| std::mem::take(&mut bot_seq[c])).collect();
                    bot_seq[i] = if kind == CotreeKind::Join {
                        bottoms.into_iter().rev().flatten().collect()
                    } else {
                        bottoms.into_iter().flatten().collect()
                    };
                }
            }
        }
        let n = t.n();
        let (mut top, mut bottom) = (vec![0; n], vec![0; n]);
        for (pos, &v) in top_seq[0].iter().enumerate() {
            top[v] = pos;
        }
        for (pos, &v) in bot_seq[0].iter().enumerate() {
            bottom[v] = pos;
        }
        Self { top, bottom }
    }

    pub fn to_text(&self) -> String {
        let line = |p: &[usize]| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n());
        let _ = writeln!(out, "{}", line(&self.top));
        let _ = writeln!(out, "{}", line(&self.bottom));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        if lines.is_empty() {
            return Err(perr(1, "empty diagram"));
        }
        let (l0, head) = lines[0];
        let n: usize = head.parse().map_err(|_| perr(l0, "expected vertex count"))?;
        let row = |k: usize| -> Result<Vec<usize>> {
            if n == 0 && lines.len() <= k {
                return Ok(Vec::new());
            }
            let &(ln, l) = lines.get(k).ok_or_else(|| perr(lines[lines.len() - 1].0, "missing permutation line"))?;
            let v: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(ln, "bad position")))
                .collect::<Result<_>>()?;
            if v.len() != n {
                return Err(perr(ln, "wrong number of positions"));
            }
            Ok(v)
        };
        let top = row(1)?;
        let bottom = row(2)?;
        Self::new(top, bottom)
    }

    /// Rightmost candidate in `N[x]`, optionally excluding `N(y)`; vertices
    /// are compared by their further endpoint, then by top position.
    pub fn rightmost_neighbor(&self, x: usize, excluding: Option<usize>) -> Option<usize> {
        (0..self.n())
            .filter(|&z| z == x || self.crosses(z, x))
            .filter(|&z| excluding.map_or(true, |y| !self.crosses(z, y)))
            .max_by_key(|&z| (self.top[z].max(self.bottom[z]), self.top[z]))
    }

    /// How far right the neighbors of `x` reach: the largest top position
    /// among crossers ending further right on top, and the largest bottom
    /// position among crossers ending further right on the bottom. A chain
    /// element `p` right of `x` is crossed by some neighbor of `x` iff
    /// `top(p) < reach.0` or `bottom(p) < reach.1`.
    pub fn reach(&self, x: usize) -> (usize, usize) {
        let (mut rt, mut rb) = (0, 0);
        for z in 0..self.n() {
            if self.top[z] > self.top[x] && self.bottom[z] < self.bottom[x] {
                rt = rt.max(self.top[z]);
            }
            if self.bottom[z] > self.bottom[x] && self.top[z] < self.top[x] {
                rb = rb.max(self.bottom[z]);
            }
        }
        (rt, rb)
    }
}

/// Which transfer rules drive the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Recurrence {
    /// State = (last chain element, greedy anchor). Exact.
    #[default]
    Anchored,
    /// The rightmost-neighbor rules read literally: a neighbor shared with
    /// the predecessor keeps `k`, a private rightmost neighbor adds one.
    /// Kept for comparison; it can undercount.
    Literal,
}

/// Achievable domination numbers per `(x, z)`: `k ∈ sets(x, z)` iff some
/// independent set ending in `x` has γ = k and a minimum dominating set
/// containing `z ∈ N[x]`.
#[derive(Debug, Clone)]
pub struct GammaSets {
    n: usize,
    sets: Vec<Vec<VertexSet>>,
}

impl GammaSets {
    pub fn get(&self, x: usize, z: usize) -> &VertexSet {
        &self.sets[x][z]
    }

    /// All `(x, z, k)` triples.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for z in 0..self.n {
                for k in &self.sets[x][z] {
                    out.push((x, z, k));
                }
            }
        }
        out
    }

    pub fn max_value(&self) -> usize {
        self.sets
            .iter()
            .flatten()
            .filter_map(|s| s.iter().last())
            .max()
            .unwrap_or(0)
    }
}

struct Sweep<'a> {
    d: &'a PermutationDiagram,
    reach: Vec<(usize, usize)>,
    order: Vec<usize>,
}

impl<'a> Sweep<'a> {
    fn new(d: &'a PermutationDiagram) -> Self {
        Self {
            d,
            reach: (0..d.n()).map(|x| d.reach(x)).collect(),
            order: d.top_order(),
        }
    }

    /// `p` (right of anchor `a`) is crossed by some neighbor of `a`.
    #[inline]
    fn covered(&self, a: usize, p: usize) -> bool {
        let (rt, rb) = self.reach[a];
        self.d.top[p] < rt || self.d.bottom[p] < rb
    }
}

/// Exact anchored sweep. Returns γⁱ and, per `(x, anchor)`, the best count
/// with a back-pointer.
fn anchored_values(s: &Sweep<'_>) -> (Vec<Vec<i32>>, Vec<Vec<(usize, usize)>>) {
    let n = s.d.n();
    let mut best = vec![vec![-1i32; n]; n];
    let mut pred = vec![vec![(usize::MAX, usize::MAX); n]; n];
    for (i, &x) in s.order.iter().enumerate() {
        best[x][x] = 1;
        for &y in &s.order[..i] {
            if !s.d.left_of(y, x) {
                continue;
            }
            for a in 0..n {
                let f = best[y][a];
                if f < 0 {
                    continue;
                }
                let (target, val) = if s.covered(a, x) { (a, f) } else { (x, f + 1) };
                if val > best[x][target] {
                    best[x][target] = val;
                    pred[x][target] = (y, a);
                }
            }
        }
    }
    (best, pred)
}

/// [`GammaSets`] for the chosen recurrence.
pub fn gamma_sets(d: &PermutationDiagram, rec: Recurrence) -> GammaSets {
    match rec {
        Recurrence::Anchored => anchored_sets(d),
        Recurrence::Literal => literal_sets(d),
    }
}

fn anchored_sets(d: &PermutationDiagram) -> GammaSets {
    let n = d.n();
    let s = Sweep::new(d);
    let universe = n + 2;
    // ks[x][a]: achievable γ for chains ending in x whose last anchor is a.
    let mut ks = vec![vec![VertexSet::new(universe); n]; n];
    for (i, &x) in s.order.iter().enumerate() {
        ks[x][x].insert(1);
        for &y in &s.order[..i] {
            if !d.left_of(y, x) {
                continue;
            }
            for a in 0..n {
                if ks[y][a].is_empty() {
                    continue;
                }
                if s.covered(a, x) {
                    let src = ks[y][a].clone();
                    ks[x][a].union_with(&src);
                } else {
                    let shifted = VertexSet::from_iter(universe, ks[y][a].iter().map(|k| k + 1));
                    ks[x][x].union_with(&shifted);
                }
            }
        }
    }
    let mut sets = vec![vec![VertexSet::new(universe); n]; n];
    for x in 0..n {
        for a in 0..n {
            if ks[x][a].is_empty() {
                continue;
            }
            for z in 0..n {
                let dominates_block = if a == x {
                    z == x || d.crosses(z, x)
                } else {
                    d.crosses(z, a) && d.crosses(z, x)
                };
                if dominates_block {
                    let src = ks[x][a].clone();
                    sets[x][z].union_with(&src);
                }
            }
        }
    }
    GammaSets { n, sets }
}

fn literal_sets(d: &PermutationDiagram) -> GammaSets {
    let n = d.n();
    let universe = n + 2;
    let order = d.top_order();
    let mut sets = vec![vec![VertexSet::new(universe); n]; n];
    let closed = |x: usize, z: usize| z == x || d.crosses(z, x);
    for (i, &x) in order.iter().enumerate() {
        if let Some(z0) = d.rightmost_neighbor(x, None) {
            sets[x][z0].insert(1);
        }
        for &y in &order[..i] {
            if !d.left_of(y, x) {
                continue;
            }
            // A dominator of both keeps the count when it is y's rightmost.
            if let Some(zy) = d.rightmost_neighbor(y, None) {
                if zy != y && d.crosses(zy, x) {
                    let src = sets[y][zy].clone();
                    sets[x][zy].union_with(&src);
                }
            }
            // A dominator private to x adds one.
            if let Some(z) = d.rightmost_neighbor(x, Some(y)) {
                let mut acc = VertexSet::new(universe);
                for zp in (0..n).filter(|&zp| closed(y, zp) && !d.crosses(zp, x)) {
                    acc.union_with(&sets[y][zp]);
                }
                let shifted = VertexSet::from_iter(universe, acc.iter().map(|k| k + 1).filter(|&k| k < universe));
                sets[x][z].union_with(&shifted);
            }
        }
    }
    GammaSets { n, sets }
}

/// γⁱ of the permutation graph of `d` by the exact anchored sweep, with a
/// certificate.
pub fn gamma_i_permutation(d: &PermutationDiagram) -> (usize, DominationCertificate) {
    let n = d.n();
    if n == 0 {
        return (0, DominationCertificate::empty());
    }
    let s = Sweep::new(d);
    let (best, pred) = anchored_values(&s);
    let mut end = (0, 0);
    let mut value = 0;
    for x in 0..n {
        for a in 0..n {
            if best[x][a] > value {
                value = best[x][a];
                end = (x, a);
            }
        }
    }

    // Walk the back-pointers to recover the chain, left to right.
    let mut chain = vec![end.0];
    let (mut x, mut a) = end;
    while pred[x][a].0 != usize::MAX {
        let (y, ay) = pred[x][a];
        chain.push(y);
        x = y;
        a = ay;
    }
    chain.reverse();

    let g_set = |it: &mut dyn Iterator<Item = usize>| VertexSet::from_iter(n, it);
    let mut dom = Vec::new();
    let mut i = 0;
    while i < chain.len() {
        let anchor = chain[i];
        let mut j = i;
        while j + 1 < chain.len() && s.covered(anchor, chain[j + 1]) {
            j += 1;
        }
        let last = chain[j];
        let z = if j == i {
            anchor
        } else {
            (0..n)
                .find(|&z| d.crosses(z, anchor) && d.crosses(z, last))
                .expect("reach is realized by a neighbor of the anchor")
        };
        dom.push(z);
        i = j + 1;
    }
    let a_set = g_set(&mut chain.iter().copied());
    let d_set = g_set(&mut dom.iter().copied());
    debug_assert_eq!(d_set.len(), value as usize);
    (value as usize, DominationCertificate::new(&a_set, &d_set))
}

/// γⁱ under either recurrence, value only.
pub fn gamma_i_permutation_with(d: &PermutationDiagram, rec: Recurrence) -> usize {
    match rec {
        Recurrence::Anchored => gamma_i_permutation(d).0,
        Recurrence::Literal => gamma_sets(d, rec).max_value(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::gamma_i_oracle;

    fn diagram(top: &[usize], bottom: &[usize]) -> PermutationDiagram {
        PermutationDiagram::new(top.to_vec(), bottom.to_vec()).unwrap()
    }

    #[test]
    fn diagram_graphs() {
        let id = diagram(&[0, 1, 2, 3], &[0, 1, 2, 3]);
        assert_eq!(id.to_graph().m(), 0);
        let rev = diagram(&[0, 1, 2, 3], &[3, 2, 1, 0]);
        assert_eq!(rev.to_graph(), Graph::complete(4));
        let k2k1 = diagram(&[0, 1, 2], &[1, 0, 2]);
        assert_eq!(k2k1.to_graph().edges(), vec![(0, 1)]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PermutationDiagram::new(vec![0, 0], vec![0, 1]).is_err());
        assert!(PermutationDiagram::new(vec![0, 1], vec![0]).is_err());
    }

    #[test]
    fn rightmost_examples() {
        let id = diagram(&[0, 1, 2], &[0, 1, 2]);
        for x in 0..3 {
            assert_eq!(id.rightmost_neighbor(x, None), Some(x));
        }
        let k2k1 = diagram(&[0, 1, 2], &[1, 0, 2]);
        assert_eq!(k2k1.rightmost_neighbor(2, None), Some(2));

        let rev = diagram(&[0, 1, 2, 3], &[3, 2, 1, 0]);
        let z = rev.rightmost_neighbor(0, None).unwrap();
        let key = |v: usize| (rev.top(v).max(rev.bottom(v)), rev.top(v));
        assert!((0..4).all(|v| key(v) <= key(z)));
        assert_eq!(z, 3);
    }

    #[test]
    fn edgeless_value_is_n() {
        let id = diagram(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]);
        let (v, cert) = gamma_i_permutation(&id);
        assert_eq!(v, 5);
        cert.verify(&id.to_graph()).unwrap();
        assert_eq!(gamma_i_permutation_with(&id, Recurrence::Literal), 5);
    }

    #[test]
    fn p4_diagram() {
        // P4 as 1-0-3-2 style crossings.
        let d = diagram(&[1, 0, 3, 2], &[0, 2, 1, 3]);
        let g = d.to_graph();
        let (v, cert) = gamma_i_permutation(&d);
        assert_eq!(v, gamma_i_oracle(&g).0);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn text_round_trip() {
        let d = diagram(&[2, 0, 1], &[0, 2, 1]);
        assert_eq!(PermutationDiagram::parse(&d.to_text()).unwrap(), d);
        assert!(PermutationDiagram::parse("2\n0 1\n").is_err());
        assert!(PermutationDiagram::parse("2\n0 1\n1 1\n").is_err());
    }

    #[test]
    fn cotree_diagram_matches_graph() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let t = crate::cograph::build_cotree(&c4).unwrap();
        assert_eq!(PermutationDiagram::from_cotree(&t).to_graph(), c4);
    }
}
