//! Distance-hereditary graphs.
//!
//! Recognition eliminates pendant vertices and twins one at a time; the
//! resulting pruning sequence is turned into a rooted binary decomposition
//! tree whose nodes carry a join/union label and a twinset: the members of
//! the subtree that see anything outside it. All members of a twinset see
//! the same outside vertices, so a partial solution below a node talks to
//! the rest of the graph only through three bits:
//!
//! * `A ∩ Q ≠ ∅` (blocks outside twinset neighbors from joining `A`),
//! * some vertex of `A ∩ Q` still needs an outside dominator,
//! * `D ∩ Q ≠ ∅` (dominates every outside twinset neighbor).
//!
//! The table at a node describes each independent set `A` of the subtree by
//! its cost vector: the fewest dominators inside the subtree for each
//! combination of the last two bits. Only Pareto-maximal vectors are kept,
//! which is what the max over `A` of the min over `D` needs.
//!
//! Pruning sequence text format: one elimination per line, in elimination
//! order, `pendant v u`, `ttwin v u` or `ftwin v u`; the vertex that is
//! never eliminated is the last one standing.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PruneOp {
    /// `v` has `u` as its only neighbor.
    Pendant { v: usize, u: usize },
    /// `N[v] = N[u]`.
    TrueTwin { v: usize, u: usize },
    /// `N(v) = N(u)`.
    FalseTwin { v: usize, u: usize },
}

impl PruneOp {
    pub fn removed(&self) -> usize {
        match *self {
            PruneOp::Pendant { v, .. } | PruneOp::TrueTwin { v, .. } | PruneOp::FalseTwin { v, .. } => v,
        }
    }

    pub fn anchor(&self) -> usize {
        match *self {
            PruneOp::Pendant { u, .. } | PruneOp::TrueTwin { u, .. } | PruneOp::FalseTwin { u, .. } => u,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruningSequence {
    n: usize,
    ops: Vec<PruneOp>,
}

impl PruningSequence {
    /// Checks that the eliminated vertices are distinct, leave exactly one
    /// survivor in `0..n`, and that every anchor is still present.
    pub fn new(n: usize, ops: Vec<PruneOp>) -> Result<Self> {
        if n == 0 || ops.len() + 1 != n {
            return Err(Error::BadPruningSequence {
                step: 0,
                msg: format!("{} operations cannot reduce {n} vertices to one", ops.len()),
            });
        }
        let mut gone = vec![false; n];
        for (step, op) in ops.iter().enumerate() {
            let (v, u) = (op.removed(), op.anchor());
            let bad = |msg: String| Error::BadPruningSequence { step, msg };
            if v >= n || u >= n {
                return Err(bad(format!("vertex out of range 0..{n}")));
            }
            if v == u {
                return Err(bad(format!("vertex {v} anchored to itself")));
            }
            if gone[v] || gone[u] {
                return Err(bad(format!("vertex {} already eliminated", if gone[v] { v } else { u })));
            }
            gone[v] = true;
        }
        Ok(Self { n, ops })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[PruneOp] {
        &self.ops
    }

    /// The vertex left after all eliminations.
    pub fn survivor(&self) -> usize {
        let mut gone = vec![false; self.n];
        for op in &self.ops {
            gone[op.removed()] = true;
        }
        gone.iter().position(|g| !g).expect("exactly one survivor")
    }

    /// Rebuilds the graph by undoing the eliminations in reverse order.
    pub fn replay(&self) -> Graph {
        let mut rows = vec![VertexSet::new(self.n); self.n];
        for op in self.ops.iter().rev() {
            let (v, u) = (op.removed(), op.anchor());
            let nv = match op {
                PruneOp::Pendant { .. } => VertexSet::from_iter(self.n, [u]),
                PruneOp::TrueTwin { .. } => {
                    let mut r = rows[u].clone();
                    r.insert(u);
                    r
                }
                PruneOp::FalseTwin { .. } => rows[u].clone(),
            };
            for w in &nv {
                rows[w].insert(v);
            }
            rows[v] = nv;
        }
        Graph::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for op in &self.ops {
            let _ = match *op {
                PruneOp::Pendant { v, u } => writeln!(out, "pendant {v} {u}"),
                PruneOp::TrueTwin { v, u } => writeln!(out, "ttwin {v} {u}"),
                PruneOp::FalseTwin { v, u } => writeln!(out, "ftwin {v} {u}"),
            };
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            let toks: Vec<&str> = t.split_whitespace().collect();
            let [kind, v, u] = toks[..] else {
                return Err(perr("expected '<pendant|ttwin|ftwin> v u'"));
            };
            let v: usize = v.parse().map_err(|_| perr("bad vertex"))?;
            let u: usize = u.parse().map_err(|_| perr("bad vertex"))?;
            ops.push(match kind {
                "pendant" => PruneOp::Pendant { v, u },
                "ttwin" => PruneOp::TrueTwin { v, u },
                "ftwin" => PruneOp::FalseTwin { v, u },
                _ => return Err(perr("operation must be pendant, ttwin or ftwin")),
            });
        }
        Self::new(ops.len() + 1, ops)
    }
}

/// Eliminates pendant vertices and twins until one vertex is left. Fails on
/// graphs that are not distance-hereditary.
pub fn recognize_dh(g: &Graph) -> Result<PruningSequence> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Invalid("empty graph".into()));
    }
    let mut alive = g.vertex_set();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut ops = Vec::with_capacity(n - 1);
    while alive.len() > 1 {
        let op = find_pendant(g, &alive, &deg).or_else(|| find_twin(g, &alive));
        let Some(op) = op else {
            return Err(Error::NotDistanceHereditary {
                vertex: alive.first().unwrap(),
                remaining: alive.len(),
            });
        };
        let v = op.removed();
        alive.remove(v);
        for &w in g.neighbors(v) {
            deg[w] -= 1;
        }
        ops.push(op);
    }
    PruningSequence::new(n, ops)
}

fn find_pendant(g: &Graph, alive: &VertexSet, deg: &[usize]) -> Option<PruneOp> {
    alive.iter().find(|&v| deg[v] == 1).map(|v| {
        let u = g.row(v).intersection(alive).first().unwrap();
        PruneOp::Pendant { v, u }
    })
}

fn find_twin(g: &Graph, alive: &VertexSet) -> Option<PruneOp> {
    let mut open: HashMap<VertexSet, usize> = HashMap::new();
    let mut closed: HashMap<VertexSet, usize> = HashMap::new();
    for v in alive {
        let mut nb = g.row(v).intersection(alive);
        if let Some(&u) = open.get(&nb) {
            return Some(PruneOp::FalseTwin { v, u });
        }
        open.insert(nb.clone(), v);
        nb.insert(v);
        if let Some(&u) = closed.get(&nb) {
            return Some(PruneOp::TrueTwin { v, u });
        }
        closed.insert(nb, v);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DhLabel {
    /// Every twinset vertex of one child sees every twinset vertex of the other.
    Join,
    /// No edges between the children.
    Union,
}

/// Which children's twinsets make up the node's own twinset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinsetTag {
    Left,
    Right,
    Both,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DhNodeKind {
    Leaf(usize),
    Internal {
        label: DhLabel,
        tag: TwinsetTag,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhNode {
    pub kind: DhNodeKind,
    /// Vertices mapped to leaves below this node.
    pub members: VertexSet,
    /// Members with a neighbor outside `members`.
    pub twinset: VertexSet,
}

/// Rooted binary decomposition tree. Children precede their parents in
/// `nodes`, so index order is a valid bottom-up order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhDecomposition {
    nodes: Vec<DhNode>,
    leaf_of: Vec<usize>,
}

impl DhDecomposition {
    pub fn nodes(&self) -> &[DhNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Leaf node holding vertex `v`.
    pub fn leaf_of(&self, v: usize) -> usize {
        self.leaf_of[v]
    }

    /// Checks the twinset definition and the child-to-child adjacency rule
    /// directly against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        for (i, node) in self.nodes.iter().enumerate() {
            let outside = node.members.complement();
            let expect: VertexSet = g.set(node.members.iter().filter(|&w| g.row(w).intersects(&outside)));
            if expect != node.twinset {
                return bad(format!("node {i}: twinset {:?}, expected {expect:?}", node.twinset));
            }
            if let DhNodeKind::Internal { label, left, right, .. } = node.kind {
                let (l, r) = (&self.nodes[left], &self.nodes[right]);
                if l.members.union(&r.members) != node.members || l.members.intersects(&r.members) {
                    return bad(format!("node {i}: children do not partition the members"));
                }
                for w in &l.members {
                    let across = g.row(w).intersection(&r.members);
                    let want = match label {
                        DhLabel::Join if l.twinset.contains(w) => r.twinset.clone(),
                        _ => g.empty_set(),
                    };
                    if across != want {
                        return bad(format!("node {i}: adjacency of {w} across children breaks the {label:?} rule"));
                    }
                }
            }
        }
        if !self.nodes[self.root()].twinset.is_empty() {
            return bad("root twinset is not empty".into());
        }
        Ok(())
    }
}

/// Builds the decomposition tree from a pruning sequence of `g`.
pub fn build_dh_decomposition(g: &Graph, s: &PruningSequence) -> Result<DhDecomposition> {
    let n = g.n();
    if s.n() != n {
        return Err(Error::BadPruningSequence {
            step: 0,
            msg: format!("sequence covers {} vertices, graph has {n}", s.n()),
        });
    }
    let mut nodes = Vec::with_capacity(2 * n - 1);
    let mut rep = Vec::with_capacity(n);
    for v in 0..n {
        let mut twinset = g.empty_set();
        if g.degree(v) > 0 {
            twinset.insert(v);
        }
        rep.push(nodes.len());
        nodes.push(DhNode {
            kind: DhNodeKind::Leaf(v),
            members: g.set([v]),
            twinset,
        });
    }
    let leaf_of = rep.clone();

    let mut alive = g.vertex_set();
    for (step, op) in s.ops().iter().enumerate() {
        let (v, u) = (op.removed(), op.anchor());
        let nv = g.row(v).intersection(&alive);
        let nu = g.row(u).intersection(&alive);
        let ok = match op {
            PruneOp::Pendant { .. } => nv.len() == 1 && nv.contains(u),
            PruneOp::TrueTwin { .. } => {
                nv.contains(u) && {
                    let (mut a, mut b) = (nv.clone(), nu.clone());
                    a.remove(u);
                    b.remove(v);
                    a == b
                }
            }
            PruneOp::FalseTwin { .. } => !nv.contains(u) && nv == nu,
        };
        if !ok {
            return Err(Error::BadPruningSequence {
                step,
                msg: format!("{op:?} does not hold in the remaining graph"),
            });
        }
        alive.remove(v);
        let remaining_deg = g.row(u).intersection_len(&alive);
        let (label, tag) = match op {
            PruneOp::Pendant { .. } => (DhLabel::Join, TwinsetTag::Left),
            PruneOp::TrueTwin { .. } => (DhLabel::Join, TwinsetTag::Both),
            PruneOp::FalseTwin { .. } => (DhLabel::Union, TwinsetTag::Both),
        };
        let tag = if remaining_deg == 0 { TwinsetTag::Empty } else { tag };
        let (left, right) = (rep[u], rep[v]);
        let members = nodes[left].members.union(&nodes[right].members);
        let twinset = match tag {
            TwinsetTag::Left => nodes[left].twinset.clone(),
            TwinsetTag::Right => nodes[right].twinset.clone(),
            TwinsetTag::Both => nodes[left].twinset.union(&nodes[right].twinset),
            TwinsetTag::Empty => g.empty_set(),
        };
        rep[u] = nodes.len();
        nodes.push(DhNode {
            kind: DhNodeKind::Internal { label, tag, left, right },
            members,
            twinset,
        });
    }
    Ok(DhDecomposition { nodes, leaf_of })
}

/// Cost standing in for "no such dominating set".
pub const INF: u32 = u32::MAX / 4;

/// Index into [`DhEntry::cost`] for the dominator profile
/// `(twinset may stay undominated, dominator inside twinset)`.
#[inline]
pub const fn profile(undominated_ok: bool, twinset_dominator: bool) -> usize {
    (undominated_ok as usize) << 1 | twinset_dominator as usize
}

/// One independent set `A` of a subtree, summarized for the outside.
///
/// `cost[profile(u, d)]` is the fewest subtree vertices `D` that dominate
/// all of `A` outside the twinset, and also `A ∩ Q` unless `u`, with
/// `D ∩ Q ≠ ∅` required when `d`. [`INF`] marks impossible profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DhEntry {
    pub a_meets_twinset: bool,
    pub cost: [u32; 4],
}

impl DhEntry {
    /// `self` is at least as hard to dominate as `other` in every context.
    pub fn dominates(&self, other: &DhEntry) -> bool {
        (!self.a_meets_twinset || other.a_meets_twinset)
            && self.cost.iter().zip(&other.cost).all(|(a, b)| a >= b)
    }
}

/// Keeps the Pareto-maximal entries (first occurrence wins on ties).
pub fn pareto_max<T: Clone>(items: &[(DhEntry, T)]) -> Vec<(DhEntry, T)> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    let key = |e: &DhEntry| e.cost.iter().map(|&c| c as u64).sum::<u64>();
    order.sort_by(|&a, &b| {
        key(&items[b].0)
            .cmp(&key(&items[a].0))
            .then(items[a].0.a_meets_twinset.cmp(&items[b].0.a_meets_twinset))
    });
    let mut kept: Vec<(DhEntry, T)> = Vec::new();
    for i in order {
        if !kept.iter().any(|(k, _)| k.dominates(&items[i].0)) {
            kept.push(items[i].clone());
        }
    }
    kept
}

/// Frontier at one decomposition node. `back[i]` points into the
/// children's tables (for a leaf, `back[i].0 == 1` iff the vertex is in `A`).
#[derive(Debug, Clone)]
pub struct EdgeTable {
    pub entries: Vec<DhEntry>,
    pub back: Vec<(u32, u32)>,
}

fn leaf_table(has_twinset: bool) -> EdgeTable {
    let items = if has_twinset {
        vec![
            (DhEntry { a_meets_twinset: false, cost: [0, 1, 0, 1] }, (0, 0)),
            (DhEntry { a_meets_twinset: true, cost: [1, 1, 0, 1] }, (1, 0)),
        ]
    } else {
        vec![
            (DhEntry { a_meets_twinset: false, cost: [0, INF, 0, INF] }, (0, 0)),
            (DhEntry { a_meets_twinset: false, cost: [1, INF, 1, INF] }, (1, 0)),
        ]
    };
    let kept = pareto_max(&items);
    EdgeTable {
        entries: kept.iter().map(|x| x.0).collect(),
        back: kept.iter().map(|x| x.1).collect(),
    }
}

/// Child profiles `(left, right)` feasible for parent profile `(u, d)`.
fn feasible(label: DhLabel, tag: TwinsetTag, parent: usize, l: usize, r: usize) -> bool {
    let (u, d) = (parent >> 1 == 1, parent & 1 == 1);
    let (u1, d1) = (l >> 1 == 1, l & 1 == 1);
    let (u2, d2) = (r >> 1 == 1, r & 1 == 1);
    let join = label == DhLabel::Join;
    let pass1 = u && matches!(tag, TwinsetTag::Left | TwinsetTag::Both);
    let pass2 = u && matches!(tag, TwinsetTag::Right | TwinsetTag::Both);
    if u1 && !(join && d2 || pass1) {
        return false;
    }
    if u2 && !(join && d1 || pass2) {
        return false;
    }
    !d || match tag {
        TwinsetTag::Left => d1,
        TwinsetTag::Right => d2,
        TwinsetTag::Both => d1 || d2,
        TwinsetTag::Empty => false,
    }
}

fn combine(label: DhLabel, tag: TwinsetTag, a: &DhEntry, b: &DhEntry) -> Option<DhEntry> {
    if label == DhLabel::Join && a.a_meets_twinset && b.a_meets_twinset {
        return None;
    }
    let a_meets_twinset = match tag {
        TwinsetTag::Left => a.a_meets_twinset,
        TwinsetTag::Right => b.a_meets_twinset,
        TwinsetTag::Both => a.a_meets_twinset || b.a_meets_twinset,
        TwinsetTag::Empty => false,
    };
    let mut cost = [INF; 4];
    for (p, slot) in cost.iter_mut().enumerate() {
        for l in 0..4 {
            for r in 0..4 {
                if feasible(label, tag, p, l, r) {
                    *slot = (*slot).min((a.cost[l] + b.cost[r]).min(INF));
                }
            }
        }
    }
    Some(DhEntry { a_meets_twinset, cost })
}

/// Frontier tables for every node of `d`, bottom-up.
pub fn dh_tables(d: &DhDecomposition) -> Vec<EdgeTable> {
    let mut tables: Vec<EdgeTable> = Vec::with_capacity(d.nodes().len());
    for node in d.nodes() {
        let table = match node.kind {
            DhNodeKind::Leaf(_) => leaf_table(!node.twinset.is_empty()),
            DhNodeKind::Internal { label, tag, left, right } => {
                let (tl, tr) = (&tables[left], &tables[right]);
                let mut items = Vec::with_capacity(tl.entries.len() * tr.entries.len());
                for (i, a) in tl.entries.iter().enumerate() {
                    for (j, b) in tr.entries.iter().enumerate() {
                        if let Some(e) = combine(label, tag, a, b) {
                            items.push((e, (i as u32, j as u32)));
                        }
                    }
                }
                let kept = pareto_max(&items);
                EdgeTable {
                    entries: kept.iter().map(|x| x.0).collect(),
                    back: kept.iter().map(|x| x.1).collect(),
                }
            }
        };
        debug_assert!(!table.entries.is_empty());
        tables.push(table);
    }
    tables
}

/// γⁱ of a distance-hereditary graph from its decomposition tree.
pub fn gamma_i_dh(g: &Graph, d: &DhDecomposition) -> (usize, DominationCertificate) {
    let tables = dh_tables(d);
    let root = d.root();
    let full = profile(false, false);
    let (best, _) = tables[root]
        .entries
        .iter()
        .enumerate()
        .fold((0usize, 0u32), |(bi, bv), (i, e)| if e.cost[full] > bv { (i, e.cost[full]) } else { (bi, bv) });
    let value = tables[root].entries[best].cost[full] as usize;

    let mut a = g.empty_set();
    let mut dom = g.empty_set();
    let mut stack = vec![(root, best, full)];
    while let Some((node, idx, p)) = stack.pop() {
        let table = &tables[node];
        let entry = &table.entries[idx];
        match d.nodes()[node].kind {
            DhNodeKind::Leaf(v) => {
                if table.back[idx].0 == 1 {
                    a.insert(v);
                }
                if entry.cost[p] == 1 {
                    dom.insert(v);
                }
            }
            DhNodeKind::Internal { label, tag, left, right } => {
                let (i, j) = table.back[idx];
                let (ea, eb) = (&tables[left].entries[i as usize], &tables[right].entries[j as usize]);
                let (l, r) = (0..16)
                    .map(|x| (x >> 2, x & 3))
                    .find(|&(l, r)| feasible(label, tag, p, l, r) && ea.cost[l] + eb.cost[r] == entry.cost[p])
                    .expect("stored cost is realized by some child profiles");
                stack.push((left, i as usize, l));
                stack.push((right, j as usize, r));
            }
        }
    }
    debug_assert_eq!(dom.len(), value);
    (value, DominationCertificate::new(&a, &dom))
}

/// Recognizes, decomposes and solves in one call.
pub fn solve(g: &Graph) -> Result<(usize, DominationCertificate)> {
    if g.n() == 0 {
        return Ok((0, DominationCertificate::empty()));
    }
    let s = recognize_dh(g)?;
    let d = build_dh_decomposition(g, &s)?;
    Ok(gamma_i_dh(g, &d))
}
