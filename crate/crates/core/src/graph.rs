//! Simple undirected graphs with paired neighbor-list / bit-row storage,
//! plus the derived-graph constructors (complement, induced subgraph,
//! Cartesian and strong products, edge-clique graph).

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Vertex ids are stored as `u32` in external formats; graph sizes beyond
/// this are rejected.
pub const MAX_VERTICES: usize = u32::MAX as usize;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `0..n`. Duplicate edges are merged; out-of-range
    /// endpoints and self-loops are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![VertexSet::new(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// Builds from symmetric, loop-free bit rows.
    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Self {
        let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(rows.iter().enumerate().all(|(v, r)| !r.contains(v)));
        Self { adj, rows, m }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_rows(vec![VertexSet::new(n); n])
    }

    pub fn complete(n: usize) -> Self {
        let rows = (0..n)
            .map(|v| {
                let mut r = VertexSet::full(n);
                r.remove(v);
                r
            })
            .collect();
        Self::from_rows(rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn closed_row(&self, v: usize) -> VertexSet {
        let mut r = self.rows[v].clone();
        r.insert(v);
        r
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, it: I) -> VertexSet {
        VertexSet::from_iter(self.n(), it)
    }

    /// Union of closed neighborhoods of `d`.
    pub fn closed_neighborhood(&self, d: &VertexSet) -> VertexSet {
        let mut out = d.clone();
        for v in d {
            out.union_with(&self.rows[v]);
        }
        out
    }

    /// True iff every vertex of `b` lies in `N[x]` for some `x` in `d`.
    pub fn dominates(&self, d: &VertexSet, b: &VertexSet) -> bool {
        b.is_subset(&self.closed_neighborhood(d))
    }

    /// First adjacent pair inside `s`, if any.
    pub fn independence_violation(&self, s: &VertexSet) -> Option<(usize, usize)> {
        for v in s {
            if let Some(u) = self.rows[v].intersection(s).first() {
                return Some((v.min(u), v.max(u)));
            }
        }
        None
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.rows[v].intersects(s))
    }

    /// Independent and not extendable.
    pub fn is_maximal_independent(&self, s: &VertexSet) -> bool {
        self.is_independent(s) && self.closed_neighborhood(s).len() == self.n()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows = (0..n)
            .map(|v| {
                let mut r = self.rows[v].complement();
                r.remove(v);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Subgraph induced by `s`. The returned table maps new ids to old ids;
    /// new ids follow increasing old id.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map = s.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let rows = map
            .iter()
            .map(|&v| {
                let mut r = VertexSet::new(k);
                for &u in &self.adj[v] {
                    if index[u] != usize::MAX {
                        r.insert(index[u]);
                    }
                }
                r
            })
            .collect();
        (Graph::from_rows(rows), map)
    }

    /// Components ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertex_set())
    }

    /// Components of `G[s]`, ordered by smallest member.
    pub fn components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = self.empty_set();
            comp.insert(start);
            let mut frontier = comp.clone();
            left.remove(start);
            while !frontier.is_empty() {
                let mut next = self.empty_set();
                for v in &frontier {
                    next.union_with(&self.rows[v]);
                }
                next.intersect_with(&left);
                left.difference_with(&next);
                comp.union_with(&next);
                frontier = next;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    fn product_size(g: &Graph, h: &Graph) -> Result<usize> {
        g.n()
            .checked_mul(h.n())
            .filter(|&p| p <= MAX_VERTICES)
            .ok_or(Error::ProductTooLarge(g.n(), h.n()))
    }

    /// `G □ H`. Vertex `(a, b)` gets index `a * |V(H)| + b`.
    pub fn cartesian_product(&self, h: &Graph) -> Result<Graph> {
        let nh = h.n();
        let n = Self::product_size(self, h)?;
        let mut edges = Vec::new();
        for a in 0..self.n() {
            for (b1, b2) in h.edges() {
                edges.push((a * nh + b1, a * nh + b2));
            }
        }
        for (a1, a2) in self.edges() {
            for b in 0..nh {
                edges.push((a1 * nh + b, a2 * nh + b));
            }
        }
        Graph::new(n, edges)
    }

    /// `G ⊠ H`: distinct pairs adjacent when both coordinates are equal or
    /// adjacent. Indexing as in [`Graph::cartesian_product`].
    pub fn strong_product(&self, h: &Graph) -> Result<Graph> {
        let nh = h.n();
        let n = Self::product_size(self, h)?;
        let mut edges = Vec::new();
        for a1 in 0..self.n() {
            let ca = self.closed_row(a1);
            for b1 in 0..nh {
                let cb = h.closed_row(b1);
                let x = a1 * nh + b1;
                for a2 in &ca {
                    for b2 in &cb {
                        let y = a2 * nh + b2;
                        if x < y {
                            edges.push((x, y));
                        }
                    }
                }
            }
        }
        Graph::new(n, edges)
    }

    /// Edge-clique graph: one vertex per edge (lexicographic order, as in
    /// [`Graph::edges`]); two edges are adjacent when together they span a
    /// clique, i.e. they share an endpoint and their other endpoints are
    /// adjacent. The second component is the edge behind each new vertex.
    pub fn edge_clique_graph(&self) -> (Graph, Vec<(usize, usize)>) {
        let edges = self.edges();
        let mut index = std::collections::HashMap::with_capacity(edges.len());
        for (i, &e) in edges.iter().enumerate() {
            index.insert(e, i);
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut out = Vec::new();
        // Each triangle {a, b, c} makes its three edges pairwise adjacent.
        for (a, b) in &edges {
            let (a, b) = (*a, *b);
            let common = self.rows[a].intersection(&self.rows[b]);
            for c in &common {
                if c > b {
                    let ab = index[&key(a, b)];
                    let ac = index[&key(a, c)];
                    let bc = index[&key(b, c)];
                    out.extend([(ab, ac), (ab, bc), (ac, bc)]);
                }
            }
        }
        let g = Graph::new(edges.len(), out).expect("edge indices are in range");
        (g, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        let mut rows = vec![VertexSet::new(n); n];
        for (u, v) in self.edges() {
            rows[perm[u]].insert(perm[v]);
            rows[perm[v]].insert(perm[u]);
        }
        Graph::from_rows(rows)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        Graph::new(off + other.n(), edges).expect("shifted edges are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = c4();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2));

        let k1 = Graph::new(1, []).unwrap();
        assert_eq!((k1.n(), k1.m(), k1.degree(0)), (1, 0, 0));

        let dup = Graph::new(3, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(dup.m(), 1);
        assert_eq!(dup.degree(2), 0);
    }

    #[test]
    fn build_rejections() {
        assert_eq!(Graph::new(2, [(0, 5)]), Err(Error::VertexOutOfRange(0, 5, 2)));
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn dominates_examples() {
        let g = c4();
        assert!(g.dominates(&g.set([0]), &g.set([0, 1, 3])));
        assert!(!g.dominates(&g.set([0]), &g.set([2])));
        assert!(g.dominates(&g.empty_set(), &g.empty_set()));
    }

    #[test]
    fn derived_graph_examples() {
        let g = c4();
        let co = g.complement();
        assert_eq!(co.edges(), vec![(0, 2), (1, 3)]);

        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (sub, map) = p4.induced_subgraph(&p4.set([0, 1]));
        assert_eq!(sub.edges(), vec![(0, 1)]);
        assert_eq!(map, vec![0, 1]);

        let k2k1 = Graph::new(3, [(0, 1)]).unwrap();
        let comps = k2k1.connected_components();
        assert_eq!(comps.iter().map(VertexSet::len).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn cartesian_examples() {
        let k2 = Graph::complete(2);
        let k2k2 = k2.cartesian_product(&k2).unwrap();
        assert_eq!(k2k2.m(), 4);
        assert!((0..4).all(|v| k2k2.degree(v) == 2));

        let k1 = Graph::empty(1);
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(k1.cartesian_product(&p3).unwrap(), p3);

        // P2 □ P3 is the 2×3 grid.
        let p2 = Graph::complete(2);
        let grid = p2.cartesian_product(&p3).unwrap();
        assert_eq!((grid.n(), grid.m()), (6, 7));
    }

    #[test]
    fn strong_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(k2.strong_product(&k2).unwrap(), Graph::complete(4));
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(Graph::empty(1).strong_product(&p3).unwrap(), p3);
    }

    #[test]
    fn edge_clique_examples() {
        let (ke, e) = Graph::complete(3).edge_clique_graph();
        assert_eq!(ke, Graph::complete(3));
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 2)]);

        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let (ke, _) = p3.edge_clique_graph();
        assert_eq!((ke.n(), ke.m()), (2, 0));
    }
}
