//! Cographs: cotree recognition with an induced-P4 certificate on failure,
//! and the closed forms for γ and γⁱ.
//!
//! Cotree text format, one node per line in preorder:
//!
//! ```text
//! node <id> UNION|JOIN [parent <pid>]
//! node <id> LEAF <vertex> [parent <pid>]
//! ```
//!
//! The root is the only line without a `parent` clause; a parent must be
//! declared before its children.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CotreeKind {
    Union,
    Join,
    Leaf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotreeNode {
    pub kind: CotreeKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Rooted union/join decomposition. Nodes are stored in preorder with the
/// root at index 0, labels alternate along every root-to-leaf path and
/// every internal node has at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    n: usize,
}

/// Four vertices `a, b, c, d` inducing the path `a - b - c - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P4Witness(pub [usize; 4]);

impl P4Witness {
    pub fn is_induced_p4(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.0;
        let distinct = {
            let mut v = self.0.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len() == 4
        };
        distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(a, d)
            && !g.has_edge(b, d)
    }
}

impl Cotree {
    /// Builds a canonical cotree from an arbitrary rooted tree given as
    /// `(kind, children)` per node. Internal nodes with one child are
    /// spliced out and same-label parent/child pairs are merged.
    pub fn from_parts(parts: Vec<(CotreeKind, Vec<usize>)>, root: usize) -> Result<Self> {
        let missing = |c: usize| Error::Invalid(format!("cotree node {c} missing"));
        for (i, (kind, children)) in parts.iter().enumerate() {
            match kind {
                CotreeKind::Leaf(_) if !children.is_empty() => {
                    return Err(Error::Invalid(format!("leaf {i} has children")))
                }
                CotreeKind::Union | CotreeKind::Join if children.is_empty() => {
                    return Err(Error::Invalid(format!("internal node {i} has no children")))
                }
                _ => {}
            }
            if let Some(&c) = children.iter().find(|&&c| c >= parts.len()) {
                return Err(missing(c));
            }
        }
        if root >= parts.len() {
            return Err(missing(root));
        }
        let mut visits = vec![0u32; parts.len()];
        // Skips unary internal nodes.
        let resolve = |mut c: usize, visits: &mut Vec<u32>| -> Result<usize> {
            loop {
                visits[c] += 1;
                if visits[c] > 1 {
                    return Err(Error::Invalid(format!("cotree node {c} is shared")));
                }
                match &parts[c] {
                    (CotreeKind::Union | CotreeKind::Join, ch) if ch.len() == 1 => c = ch[0],
                    _ => return Ok(c),
                }
            }
        };

        let mut nodes = Vec::new();
        let mut n = 0;
        let start = resolve(root, &mut visits)?;
        let mut stack = vec![(start, None::<usize>)];
        while let Some((src, parent)) = stack.pop() {
            let kind = parts[src].0;
            let id = push_node(&mut nodes, kind, parent);
            if let CotreeKind::Leaf(v) = kind {
                n = n.max(v + 1);
                continue;
            }
            // Same-label descendants merge into this node.
            let mut flat = Vec::new();
            let mut todo: Vec<usize> = parts[src].1.iter().rev().copied().collect();
            while let Some(c) = todo.pop() {
                let c = resolve(c, &mut visits)?;
                if parts[c].0 == kind {
                    todo.extend(parts[c].1.iter().rev());
                } else {
                    flat.push(c);
                }
            }
            for &c in flat.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        let t = Cotree { nodes, n };
        t.check_leaves()?;
        Ok(t)
    }

    fn check_leaves(&self) -> Result<()> {
        let mut hit = vec![false; self.n];
        for node in &self.nodes {
            if let CotreeKind::Leaf(v) = node.kind {
                if std::mem::replace(&mut hit[v], true) {
                    return Err(Error::Invalid(format!("vertex {v} appears on two leaves")));
                }
            }
        }
        if let Some(v) = hit.iter().position(|h| !h) {
            return Err(Error::Invalid(format!("vertex {v} has no leaf")));
        }
        Ok(())
    }

    pub fn leaf(v: usize) -> Self {
        Cotree {
            nodes: vec![CotreeNode { kind: CotreeKind::Leaf(v), parent: None, children: vec![] }],
            n: v + 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[CotreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Vertices below each node.
    pub fn leaf_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            if let CotreeKind::Leaf(v) = self.nodes[i].kind {
                sets[i].push(v);
            }
            if let Some(p) = self.nodes[i].parent {
                let mine = std::mem::take(&mut sets[i]);
                sets[p].extend_from_slice(&mine);
                sets[i] = mine;
            }
        }
        for s in sets.iter_mut() {
            s.sort_unstable();
        }
        sets
    }

    /// The graph this cotree describes.
    pub fn to_graph(&self) -> Graph {
        let sets = self.leaf_sets();
        let mut edges = Vec::new();
        for node in &self.nodes {
            if node.kind == CotreeKind::Join {
                for (i, &a) in node.children.iter().enumerate() {
                    for &b in &node.children[i + 1..] {
                        for &u in &sets[a] {
                            for &v in &sets[b] {
                                edges.push((u, v));
                            }
                        }
                    }
                }
            }
        }
        Graph::new(self.n, edges).expect("leaves cover 0..n")
    }

    /// Checks alternation, arity and the parent links.
    pub fn validate(&self) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind {
                CotreeKind::Leaf(_) => {
                    if !node.children.is_empty() {
                        return Err(Error::Invalid(format!("leaf node {i} has children")));
                    }
                }
                kind => {
                    if node.children.len() < 2 {
                        return Err(Error::Invalid(format!("node {i} has fewer than two children")));
                    }
                    for &c in &node.children {
                        if self.nodes[c].kind == kind {
                            return Err(Error::Invalid(format!("labels do not alternate at node {c}")));
                        }
                        if self.nodes[c].parent != Some(i) || c <= i {
                            return Err(Error::Invalid(format!("bad parent link at node {c}")));
                        }
                    }
                }
            }
        }
        self.check_leaves()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = write!(out, "node {i} ");
            match node.kind {
                CotreeKind::Union => out.push_str("UNION"),
                CotreeKind::Join => out.push_str("JOIN"),
                CotreeKind::Leaf(v) => {
                    let _ = write!(out, "LEAF {v}");
                }
            }
            if let Some(p) = node.parent {
                let _ = write!(out, " parent {p}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut parts: Vec<(CotreeKind, Vec<usize>)> = Vec::new();
        let mut root = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            let toks: Vec<&str> = t.split_whitespace().collect();
            if toks.len() < 3 || toks[0] != "node" {
                return Err(perr("expected 'node <id> <KIND> ...'"));
            }
            let id: usize = toks[1].parse().map_err(|_| perr("bad node id"))?;
            let (kind, rest) = match toks[2] {
                "UNION" => (CotreeKind::Union, &toks[3..]),
                "JOIN" => (CotreeKind::Join, &toks[3..]),
                "LEAF" => {
                    let v = toks
                        .get(3)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| perr("LEAF needs a vertex"))?;
                    (CotreeKind::Leaf(v), &toks[4..])
                }
                _ => return Err(perr("kind must be UNION, JOIN or LEAF")),
            };
            let parent = match rest {
                [] => None,
                ["parent", p] => {
                    let p: usize = p.parse().map_err(|_| perr("bad parent id"))?;
                    Some(*ids.get(&p).ok_or_else(|| perr("parent not declared earlier"))?)
                }
                _ => return Err(perr("trailing tokens")),
            };
            if ids.insert(id, parts.len()).is_some() {
                return Err(perr("duplicate node id"));
            }
            let me = parts.len();
            parts.push((kind, Vec::new()));
            match parent {
                Some(p) => parts[p].1.push(me),
                None if root.is_none() => root = Some(me),
                None => return Err(perr("second root")),
            }
        }
        let root = root.ok_or_else(|| Error::Parse { line: 1, msg: "empty cotree".into() })?;
        Cotree::from_parts(parts, root)
    }
}

fn push_node(nodes: &mut Vec<CotreeNode>, kind: CotreeKind, parent: Option<usize>) -> usize {
    let id = nodes.len();
    nodes.push(CotreeNode { kind, parent, children: Vec::new() });
    if let Some(p) = parent {
        nodes[p].children.push(id);
    }
    id
}

/// Recognizes a cograph by splitting on components of `G` or of its
/// complement. Fails with an induced P4 when neither is disconnected.
pub fn build_cotree(g: &Graph) -> std::result::Result<Cotree, P4Witness> {
    assert!(g.n() > 0, "cotree of the empty graph");
    let co = g.complement();
    let mut parts: Vec<(CotreeKind, Vec<usize>)> = Vec::new();
    let mut stack = vec![(g.vertex_set(), None::<usize>)];
    while let Some((s, parent)) = stack.pop() {
        let id = parts.len();
        if s.len() == 1 {
            parts.push((CotreeKind::Leaf(s.first().unwrap()), Vec::new()));
        } else {
            let comps = g.components_within(&s);
            let (kind, blocks) = if comps.len() > 1 {
                (CotreeKind::Union, comps)
            } else {
                let co_comps = co.components_within(&s);
                if co_comps.len() > 1 {
                    (CotreeKind::Join, co_comps)
                } else {
                    return Err(find_p4(g, &s));
                }
            };
            parts.push((kind, Vec::new()));
            for b in blocks.into_iter().rev() {
                stack.push((b, Some(id)));
            }
        }
        if let Some(p) = parent {
            parts[p].1.push(id);
        }
    }
    Ok(Cotree::from_parts(parts, 0).expect("recognizer emits a well-formed tree"))
}

/// Induced P4 inside `s`, which must induce a subgraph that is connected
/// and co-connected with at least two vertices.
fn find_p4(g: &Graph, s: &VertexSet) -> P4Witness {
    for b in s {
        let nb = g.row(b).intersection(s);
        for c in &nb {
            let nc = g.row(c).intersection(s);
            let mut left = nb.difference(&nc);
            left.remove(c);
            let mut right = nc.difference(&nb);
            right.remove(b);
            for a in &left {
                if let Some(d) = right.difference(g.row(a)).first() {
                    return P4Witness([a, b, c, d]);
                }
            }
        }
    }
    unreachable!("a connected, co-connected graph on ≥ 2 vertices has an induced P4")
}

/// γ of the cograph described by `t`: sum over union children, and
/// `min(min over join children, 2)` at a join.
pub fn gamma_cograph(t: &Cotree) -> usize {
    let nodes = t.nodes();
    let mut val = vec![0usize; nodes.len()];
    for i in (0..nodes.len()).rev() {
        val[i] = match nodes[i].kind {
            CotreeKind::Leaf(_) => 1,
            CotreeKind::Union => nodes[i].children.iter().map(|&c| val[c]).sum(),
            CotreeKind::Join => nodes[i].children.iter().map(|&c| val[c]).min().unwrap().min(2),
        };
    }
    val[0]
}

/// γⁱ straight from a cotree: the number of components.
pub fn gamma_i_cotree(t: &Cotree) -> usize {
    match t.nodes()[0].kind {
        CotreeKind::Union => t.nodes()[0].children.len(),
        _ => 1,
    }
}

/// γⁱ of a cograph, with a certificate: the lexicographically least maximal
/// independent set and one dominator per component.
pub fn gamma_i_cograph(g: &Graph) -> Result<(usize, DominationCertificate)> {
    if g.n() == 0 {
        return Ok((0, DominationCertificate::empty()));
    }
    let t = build_cotree(g).map_err(|w| Error::NotCograph(w.0))?;
    let sets = t.leaf_sets();
    let nodes = t.nodes();
    let comps: Vec<usize> = match nodes[0].kind {
        CotreeKind::Union => nodes[0].children.clone(),
        _ => vec![0],
    };

    // Greedy by id gives the lexicographically least maximal independent set.
    let mut a = g.empty_set();
    let mut blocked = g.empty_set();
    for v in 0..g.n() {
        if !blocked.contains(v) {
            a.insert(v);
            blocked.union_with(&g.closed_row(v));
        }
    }

    let mut d = g.empty_set();
    for &c in &comps {
        match nodes[c].kind {
            CotreeKind::Leaf(v) => {
                d.insert(v);
            }
            _ => {
                // A connected block is a join; its independent part sits in
                // one child and any vertex of another child dominates it.
                let inside = nodes[c]
                    .children
                    .iter()
                    .position(|&ch| sets[ch].iter().any(|&v| a.contains(v)))
                    .expect("component meets the maximal independent set");
                let other = nodes[c].children[if inside == 0 { 1 } else { 0 }];
                d.insert(sets[other][0]);
            }
        }
    }
    Ok((comps.len(), DominationCertificate::new(&a, &d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn c4_is_join_of_two_unions() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let t = build_cotree(&c4).unwrap();
        t.validate().unwrap();
        assert_eq!(t.nodes()[0].kind, CotreeKind::Join);
        let sets = t.leaf_sets();
        let mut kids: Vec<Vec<usize>> = t.nodes()[0].children.iter().map(|&c| sets[c].clone()).collect();
        kids.sort();
        assert_eq!(kids, vec![vec![0, 2], vec![1, 3]]);
        assert!(t.nodes()[0].children.iter().all(|&c| t.nodes()[c].kind == CotreeKind::Union));
        assert_eq!(t.to_graph(), c4);
    }

    #[test]
    fn p4_witness() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let w = build_cotree(&p4).unwrap_err();
        assert_eq!(w, P4Witness([0, 1, 2, 3]));
        assert!(w.is_induced_p4(&p4));
        assert_eq!(gamma_i_cograph(&p4).unwrap_err(), Error::NotCograph([0, 1, 2, 3]));
    }

    #[test]
    fn gamma_examples() {
        let k4 = build_cotree(&Graph::complete(4)).unwrap();
        assert_eq!(gamma_cograph(&k4), 1);
        let c4 = build_cotree(&g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap();
        assert_eq!(gamma_cograph(&c4), 2);
        let two_k2 = build_cotree(&g(4, &[(0, 1), (2, 3)])).unwrap();
        assert_eq!(gamma_cograph(&two_k2), 2);
        assert_eq!(gamma_cograph(&Cotree::leaf(0)), 1);
    }

    #[test]
    fn gamma_i_examples() {
        let (v, cert) = gamma_i_cograph(&Graph::complete(5)).unwrap();
        assert_eq!(v, 1);
        cert.verify(&Graph::complete(5)).unwrap();

        let h = g(5, &[(0, 1), (2, 3)]);
        let (v, cert) = gamma_i_cograph(&h).unwrap();
        assert_eq!(v, 3);
        cert.verify(&h).unwrap();
        assert_eq!(cert.independent_set, vec![0, 2, 4]);

        assert_eq!(gamma_i_cograph(&Graph::empty(1)).unwrap().0, 1);
    }

    #[test]
    fn text_round_trip() {
        let c4 = build_cotree(&g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap();
        let text = c4.to_text();
        assert!(text.starts_with("node 0 JOIN\n"));
        assert_eq!(Cotree::parse(&text).unwrap(), c4);
    }

    #[test]
    fn from_parts_flattens() {
        // union(union(0, 1), join(2, leaf 3 under a unary union))
        let parts = vec![
            (CotreeKind::Union, vec![1, 4]),
            (CotreeKind::Union, vec![2, 3]),
            (CotreeKind::Leaf(0), vec![]),
            (CotreeKind::Leaf(1), vec![]),
            (CotreeKind::Join, vec![5, 6]),
            (CotreeKind::Leaf(2), vec![]),
            (CotreeKind::Union, vec![7]),
            (CotreeKind::Leaf(3), vec![]),
        ];
        let t = Cotree::from_parts(parts, 0).unwrap();
        t.validate().unwrap();
        assert_eq!(t.nodes()[0].children.len(), 3);
        assert_eq!(t.to_graph().edges(), vec![(2, 3)]);
    }

    #[test]
    fn parse_errors() {
        assert!(Cotree::parse("node 0 LEAF 0 parent 4\n").is_err());
        assert!(Cotree::parse("node 0 FOO\n").is_err());
        assert!(Cotree::parse("node 0 UNION\nnode 1 LEAF 0 parent 0\nnode 2 LEAF 2 parent 0\n").is_err());
    }
}
