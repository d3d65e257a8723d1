//! Tree decompositions and the bag dynamic program for γⁱ.
//!
//! The program runs on a nice decomposition. For the subgraph `G_i` below a
//! node with bag `B`, a partial independent set `A ⊆ V(G_i)` is summarized
//! by its trace `A ∩ B` and a cost vector: for every `S ⊆ B` (the
//! dominators inside the bag) and every `U ⊆ A ∩ B` (bag vertices of `A`
//! that may still be dominated later), the fewest vertices of `G_i` that
//! extend `S` and dominate every vertex of `A` except those in `U`. Cost
//! vectors are kept per trace as a Pareto-maximal set, since the final
//! answer is a maximum over `A` of a minimum over `D`.
//!
//! Decomposition files use the PACE layout with 1-based ids:
//! `s td <bags> <width+1> <n>`, then `b <bag> <vertices...>`, then one line
//! `i j` per tree edge. `c` lines are comments.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_WIDTH_CEILING: usize = 12;
/// Bags are addressed by `u32` masks.
pub const MAX_BAG: usize = 31;

const INF: u32 = u32::MAX / 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; structure is checked by
    /// [`TreeDecomposition::validate`].
    pub fn new(n: usize, bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if bags.is_empty() {
            return Err(Error::BadDecomposition("no bags".into()));
        }
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        for b in &bags {
            if let Some(&v) = b.iter().find(|&&v| v >= n) {
                return Err(Error::BadDecomposition(format!("bag vertex {v} outside 0..{n}")));
            }
        }
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= bags.len() || j >= bags.len()) {
            return Err(Error::BadDecomposition(format!("tree edge ({i}, {j}) names a missing bag")));
        }
        Ok(Self { n, bags, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Checks the tree shape, vertex and edge coverage, and that the bags
    /// holding each vertex form a connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::BadDecomposition(m));
        if g.n() != self.n {
            return bad(format!("decomposition is over {} vertices, graph has {}", self.n, g.n()));
        }
        let k = self.bags.len();
        let adj = self.tree_adjacency();
        if self.edges.len() + 1 != k || reach(&adj, 0, |_| true) != k {
            return bad("bags do not form a tree".into());
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                holders[v].push(i);
            }
        }
        if let Some(v) = holders.iter().position(Vec::is_empty) {
            return bad(format!("vertex {v} is in no bag"));
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|i| self.bags[*i].binary_search(&v).is_ok()) {
                return bad(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            let inside = |i: usize| self.bags[i].binary_search(&v).is_ok();
            if reach(&adj, hs[0], inside) != hs.len() {
                return bad(format!("bags holding vertex {v} are disconnected"));
            }
        }
        Ok(())
    }

    pub fn to_pace(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "s td {} {} {}", self.bags.len(), self.width() + 1, self.n);
        for (i, b) in self.bags.iter().enumerate() {
            let vs: Vec<String> = b.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "b {} {}", i + 1, vs.join(" "));
        }
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "{} {}", i + 1, j + 1);
        }
        out
    }

    /// Accepts both `s td <bags> <w> <n>` and `s <bags> <w> <n>` headers.
    pub fn parse_pace(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            if toks.is_empty() || toks[0] == "c" || toks[0].starts_with('#') {
                continue;
            }
            let num = |t: &str| -> Result<usize> { t.parse().map_err(|_| perr(line, "expected a number")) };
            let one_based = |t: &str| -> Result<usize> {
                num(t)?.checked_sub(1).ok_or_else(|| perr(line, "ids are 1-based"))
            };
            match toks[0] {
                "s" => {
                    let rest = if toks.get(1) == Some(&"td") { &toks[2..] } else { &toks[1..] };
                    if rest.len() != 3 {
                        return Err(perr(line, "expected 's td <bags> <width+1> <n>'"));
                    }
                    let (k, n) = (num(rest[0])?, num(rest[2])?);
                    header = Some((k, n));
                    bags = vec![None; k];
                }
                "b" => {
                    let (k, n) = header.ok_or_else(|| perr(line, "bag before header"))?;
                    let id = one_based(toks.get(1).ok_or_else(|| perr(line, "missing bag id"))?)?;
                    if id >= k {
                        return Err(perr(line, "bag id out of range"));
                    }
                    let vs = toks[2..].iter().map(|t| one_based(t)).collect::<Result<Vec<_>>>()?;
                    if vs.iter().any(|&v| v >= n) {
                        return Err(perr(line, "vertex out of range"));
                    }
                    bags[id] = Some(vs);
                }
                _ => {
                    let (k, _) = header.ok_or_else(|| perr(line, "edge before header"))?;
                    if toks.len() != 2 {
                        return Err(perr(line, "expected a tree edge 'i j'"));
                    }
                    let (a, b) = (one_based(toks[0])?, one_based(toks[1])?);
                    if a >= k || b >= k {
                        return Err(perr(line, "bag id out of range"));
                    }
                    edges.push((a, b));
                }
            }
        }
        let (_, n) = header.ok_or_else(|| perr(1, "missing 's' header"))?;
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::BadDecomposition(format!("bag {} not listed", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, bags, edges)
    }
}

fn reach(adj: &[Vec<usize>], start: usize, inside: impl Fn(usize) -> bool) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(x) = stack.pop() {
        count += 1;
        for &y in &adj[x] {
            if !seen[y] && inside(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    count
}

/// Decomposition from a min-fill elimination ordering.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    eliminate(g, |adj, alive| {
        let fill = |v: usize| -> usize {
            let nb: Vec<usize> = adj[v].iter().collect();
            nb.iter()
                .enumerate()
                .map(|(i, &a)| nb[i + 1..].iter().filter(|&&b| !adj[a].contains(b)).count())
                .sum()
        };
        alive
            .iter()
            .min_by_key(|&v| (fill(v), adj[v].len(), v))
            .expect("a vertex remains")
    })
}

/// Decomposition from a fixed elimination ordering of all vertices.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let mut seen = vec![false; g.n()];
    if order.len() != g.n() || order.iter().any(|&v| v >= g.n() || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::Invalid("elimination order is not a permutation of the vertices".into()));
    }
    let mut next = order.iter().copied();
    Ok(eliminate(g, |_, _| next.next().expect("order covers every vertex")))
}

/// Eliminates vertices in the order chosen by `pick`. Bag `i` holds the
/// `i`-th eliminated vertex and its remaining neighbors, and hangs below
/// the bag of its earliest-eliminated neighbor; component roots chain onto
/// the final bag.
fn eliminate(g: &Graph, mut pick: impl FnMut(&[VertexSet], &VertexSet) -> usize) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { n, bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.row(v).clone()).collect();
    let mut alive = g.vertex_set();
    let mut bags = Vec::with_capacity(n);
    let mut position = vec![0; n];
    let mut later: Vec<Vec<usize>> = Vec::with_capacity(n);
    for step in 0..n {
        let v = pick(&adj, &alive);
        let nb: Vec<usize> = adj[v].iter().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(v);
        }
        alive.remove(v);
        position[v] = step;
        let mut bag = nb.clone();
        bag.push(v);
        bags.push(bag);
        later.push(nb);
    }
    let mut edges = Vec::with_capacity(n - 1);
    for (i, nb) in later.iter().enumerate() {
        if let Some(p) = nb.iter().map(|&u| position[u]).min() {
            edges.push((i, p));
        } else if i + 1 < n {
            edges.push((i, n - 1));
        }
    }
    TreeDecomposition::new(n, bags, edges).expect("elimination bags are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes in creation order: children precede parents, the root (with an
/// empty bag) is last.
#[derive(Debug, Clone)]
pub struct NiceDecomposition {
    n: usize,
    nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Vertices of the subgraph below each node.
    pub fn below(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = Vec::with_capacity(self.nodes.len());
        for x in &self.nodes {
            let mut s = VertexSet::from_iter(self.n, x.bag.iter().copied());
            for &c in &x.children {
                s.union_with(&out[c]);
            }
            out.push(s);
        }
        out
    }

    /// The plain decomposition with the same bags and tree.
    pub fn to_decomposition(&self) -> TreeDecomposition {
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition::new(self.n, self.nodes.iter().map(|x| x.bag.clone()).collect(), edges)
            .expect("nice bags are in range")
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn step(&mut self, from: usize, kind: NiceKind) -> usize {
        let mut bag = self.nodes[from].bag.clone();
        match kind {
            NiceKind::Introduce(v) => {
                let p = bag.binary_search(&v).expect_err("introduced vertex is new");
                bag.insert(p, v);
            }
            NiceKind::Forget(v) => bag.retain(|&u| u != v),
            _ => unreachable!(),
        }
        self.push(kind, bag, vec![from])
    }
}

/// Converts a valid decomposition into nice form, rooted at bag 0.
pub fn make_nice(td: &TreeDecomposition) -> NiceDecomposition {
    let adj = td.tree_adjacency();
    let k = td.bags.len();
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
        i += 1;
    }
    let mut children = vec![Vec::new(); k];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }

    let mut nice = NiceDecomposition { n: td.n, nodes: Vec::new() };
    let mut top = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut chains = Vec::new();
        for &c in &children[x] {
            let mut cur = top[c];
            for &v in &td.bags[c] {
                if bag.binary_search(&v).is_err() {
                    cur = nice.step(cur, NiceKind::Forget(v));
                }
            }
            for &v in bag {
                if td.bags[c].binary_search(&v).is_err() {
                    cur = nice.step(cur, NiceKind::Introduce(v));
                }
            }
            chains.push(cur);
        }
        if chains.is_empty() {
            let mut cur = nice.push(NiceKind::Leaf, Vec::new(), Vec::new());
            for &v in bag {
                cur = nice.step(cur, NiceKind::Introduce(v));
            }
            chains.push(cur);
        }
        let mut acc = chains[0];
        for &c in &chains[1..] {
            acc = nice.push(NiceKind::Join, bag.clone(), vec![acc, c]);
        }
        top[x] = acc;
    }
    let mut cur = top[0];
    for &v in &td.bags[0] {
        cur = nice.step(cur, NiceKind::Forget(v));
    }
    debug_assert!(nice.nodes[cur].bag.is_empty());
    nice
}

#[inline]
fn insert_bit(mask: u32, p: usize, bit: bool) -> u32 {
    let low = mask & ((1 << p) - 1);
    let high = (mask >> p) << (p + 1);
    low | high | (bit as u32) << p
}

#[inline]
fn remove_bit(mask: u32, p: usize) -> u32 {
    let low = mask & ((1 << p) - 1);
    let high = (mask >> (p + 1)) << p;
    low | high
}

/// Packs the bits of `mask` selected by `sel` into the low bits.
#[inline]
fn compress(mask: u32, mut sel: u32) -> u32 {
    let (mut out, mut k) = (0, 0);
    while sel != 0 {
        let b = sel.trailing_zeros();
        out |= (mask >> b & 1) << k;
        k += 1;
        sel &= sel - 1;
    }
    out
}

/// Inverse of [`compress`].
#[inline]
fn expand(packed: u32, mut sel: u32) -> u32 {
    let (mut out, mut k) = (0, 0);
    while sel != 0 {
        let b = sel.trailing_zeros();
        out |= (packed >> k & 1) << b;
        k += 1;
        sel &= sel - 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join(usize, usize),
}

/// One Pareto-maximal summary at a node.
#[derive(Debug, Clone)]
pub struct TableEntry {
    a_mask: u32,
    costs: Vec<u32>,
    origin: Origin,
}

impl TableEntry {
    /// `A ∩ B` as a mask over bag positions.
    pub fn a_mask(&self) -> u32 {
        self.a_mask
    }

    /// Cost for dominators `s` and allowance `u ⊆ A ∩ B` (bag masks);
    /// `None` when no extension exists.
    pub fn cost(&self, s: u32, u: u32) -> Option<u32> {
        debug_assert_eq!(u & !self.a_mask, 0);
        let a = self.a_mask.count_ones();
        let c = self.costs[((s << a) | compress(u, self.a_mask)) as usize];
        (c < INF).then_some(c)
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    nice: &'a NiceDecomposition,
    /// Vertices allowed in `A`; `None` allows all.
    candidates: Option<&'a VertexSet>,
}

impl Ctx<'_> {
    /// Closed neighborhoods within the bag, as position masks.
    fn closed_masks(&self, bag: &[usize]) -> Vec<u32> {
        bag.iter()
            .enumerate()
            .map(|(i, &v)| {
                bag.iter()
                    .enumerate()
                    .filter(|&(j, &u)| i == j || self.g.has_edge(u, v))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect()
    }

    fn introduce(&self, child: &[TableEntry], bag: &[usize], v: usize) -> Vec<TableEntry> {
        let p = bag.binary_search(&v).expect("v in bag");
        let b = bag.len();
        let closed = self.closed_masks(bag);
        let nv_old = remove_bit(closed[p], p);
        let mut out = Vec::new();
        for (ci, e) in child.iter().enumerate() {
            let a_old = e.a_mask;
            let a_len_old = a_old.count_ones();
            for in_a in [false, true] {
                if in_a && (nv_old & a_old != 0 || self.candidates.is_some_and(|c| !c.contains(v))) {
                    continue;
                }
                let a_new = insert_bit(a_old, p, in_a);
                let a_len = a_new.count_ones();
                let mut costs = vec![INF; 1 << (b as u32 + a_len)];
                for s in 0u32..1 << b {
                    let s_old = remove_bit(s, p);
                    for uc in 0u32..1 << a_len {
                        let u = expand(uc, a_new);
                        let u_old = remove_bit(u, p);
                        let c = if s >> p & 1 == 1 {
                            let u_need = (u_old | nv_old) & a_old;
                            let c = e.costs[((s_old << a_len_old) | compress(u_need, a_old)) as usize];
                            (c + 1).min(INF)
                        } else if in_a && u >> p & 1 == 0 && closed[p] & s == 0 {
                            INF
                        } else {
                            e.costs[((s_old << a_len_old) | compress(u_old, a_old)) as usize]
                        };
                        costs[((s << a_len) | uc) as usize] = c;
                    }
                }
                out.push(TableEntry { a_mask: a_new, costs, origin: Origin::Introduce(ci) });
            }
        }
        out
    }

    fn forget(&self, child: &[TableEntry], child_bag: &[usize], v: usize) -> Vec<TableEntry> {
        let p = child_bag.binary_search(&v).expect("v in child bag");
        let b = child_bag.len() - 1;
        let mut out = Vec::new();
        for (ci, e) in child.iter().enumerate() {
            let a_old = e.a_mask;
            let a_len_old = a_old.count_ones();
            let a_new = remove_bit(a_old, p);
            let a_len = a_new.count_ones();
            let mut costs = vec![INF; 1 << (b as u32 + a_len)];
            for s in 0u32..1 << b {
                for uc in 0u32..1 << a_len {
                    let u_old = insert_bit(expand(uc, a_new), p, false);
                    let cu = compress(u_old, a_old);
                    let without = e.costs[((insert_bit(s, p, false) << a_len_old) | cu) as usize];
                    let with = e.costs[((insert_bit(s, p, true) << a_len_old) | cu) as usize];
                    costs[((s << a_len) | uc) as usize] = without.min(with);
                }
            }
            out.push(TableEntry { a_mask: a_new, costs, origin: Origin::Forget(ci) });
        }
        out
    }

    fn join(&self, left: &[TableEntry], right: &[TableEntry], bag: &[usize]) -> Vec<TableEntry> {
        let b = bag.len();
        let closed = self.closed_masks(bag);
        let mut by_mask: HashMap<u32, Vec<usize>> = HashMap::new();
        for (j, e) in right.iter().enumerate() {
            by_mask.entry(e.a_mask).or_default().push(j);
        }
        let mut out = Vec::new();
        for (i, l) in left.iter().enumerate() {
            let Some(rs) = by_mask.get(&l.a_mask) else { continue };
            let a = l.a_mask;
            let a_len = a.count_ones();
            for &j in rs {
                let r = &right[j];
                let mut costs = vec![INF; 1 << (b as u32 + a_len)];
                for s in 0u32..1 << b {
                    let dominated = (0..b).filter(|&q| s >> q & 1 == 1).fold(0, |m, q| m | closed[q]);
                    let base = s << a_len;
                    for uc in 0u32..1 << a_len {
                        let u = expand(uc, a);
                        let rest = a & !u & !dominated;
                        let mut best = INF;
                        // x: the part of `rest` the right side dominates.
                        let mut x = rest;
                        loop {
                            let cl = l.costs[(base | compress(u | x, a)) as usize];
                            let cr = r.costs[(base | compress(u | (rest & !x), a)) as usize];
                            best = best.min(cl + cr - s.count_ones());
                            if x == 0 {
                                break;
                            }
                            x = (x - 1) & rest;
                        }
                        costs[(base | uc) as usize] = best.min(INF);
                    }
                }
                out.push(TableEntry { a_mask: a, costs, origin: Origin::Join(i, j) });
            }
        }
        out
    }
}

/// Keeps, per trace, the cost vectors not pointwise below another.
fn prune(mut entries: Vec<TableEntry>) -> Vec<TableEntry> {
    entries.sort_by_cached_key(|e| {
        let sum: u64 = e.costs.iter().map(|&c| c as u64).sum();
        (e.a_mask, std::cmp::Reverse(sum))
    });
    let mut out: Vec<TableEntry> = Vec::with_capacity(entries.len());
    let mut group_start = 0;
    for e in entries {
        if out.last().map_or(true, |l: &TableEntry| l.a_mask != e.a_mask) {
            group_start = out.len();
        }
        let covered = out[group_start..]
            .iter()
            .any(|k| k.costs.iter().zip(&e.costs).all(|(x, y)| x >= y));
        if !covered {
            out.push(e);
        }
    }
    out
}

/// Frontier tables for every node of `nice`, in node order.
pub fn node_tables(g: &Graph, nice: &NiceDecomposition) -> Vec<Vec<TableEntry>> {
    restricted_tables(g, nice, None)
}

fn restricted_tables(g: &Graph, nice: &NiceDecomposition, candidates: Option<&VertexSet>) -> Vec<Vec<TableEntry>> {
    let ctx = Ctx { g, nice, candidates };
    let mut tables: Vec<Vec<TableEntry>> = Vec::with_capacity(nice.nodes.len());
    for node in &ctx.nice.nodes {
        let t = match node.kind {
            NiceKind::Leaf => vec![TableEntry { a_mask: 0, costs: vec![0], origin: Origin::Leaf }],
            NiceKind::Introduce(v) => ctx.introduce(&tables[node.children[0]], &node.bag, v),
            NiceKind::Forget(v) => {
                let c = node.children[0];
                ctx.forget(&tables[c], &ctx.nice.nodes[c].bag, v)
            }
            NiceKind::Join => ctx.join(&tables[node.children[0]], &tables[node.children[1]], &node.bag),
        };
        tables.push(prune(t));
    }
    tables
}

/// γⁱ from a tree decomposition of `g`, with a certificate.
pub fn gamma_i_treewidth(g: &Graph, td: &TreeDecomposition, ceiling: usize) -> Result<(usize, DominationCertificate)> {
    solve_tables(g, td, ceiling, None)
}

/// Largest γ(A) over independent sets `A ⊆ candidates`, dominators drawn
/// from all of `g`.
pub fn gamma_i_treewidth_within(
    g: &Graph,
    td: &TreeDecomposition,
    ceiling: usize,
    candidates: &VertexSet,
) -> Result<(usize, DominationCertificate)> {
    solve_tables(g, td, ceiling, Some(candidates))
}

fn solve_tables(
    g: &Graph,
    td: &TreeDecomposition,
    ceiling: usize,
    candidates: Option<&VertexSet>,
) -> Result<(usize, DominationCertificate)> {
    td.validate(g)?;
    let ceiling = ceiling.min(MAX_BAG - 1);
    if td.width() > ceiling {
        return Err(Error::WidthTooLarge { width: td.width(), ceiling });
    }
    let nice = make_nice(td);
    let tables = restricted_tables(g, &nice, candidates);
    let root = nice.root();
    let (best, root_entry) = tables[root]
        .iter()
        .enumerate()
        .map(|(i, e)| (e.costs[0], i))
        .max()
        .expect("root table is never empty");

    let mut a_set = g.empty_set();
    let mut d_set = g.empty_set();
    let mut stack = vec![(root, root_entry, 0u32, 0u32)];
    let closed_in = |bag: &[usize]| Ctx { g, nice: &nice, candidates }.closed_masks(bag);
    while let Some((x, ei, s, u)) = stack.pop() {
        let node = &nice.nodes[x];
        let e = &tables[x][ei];
        let target = e.cost(s, u).expect("reconstruction follows finite costs");
        match (node.kind, e.origin) {
            (NiceKind::Leaf, _) => {}
            (NiceKind::Introduce(v), Origin::Introduce(ci)) => {
                let p = node.bag.binary_search(&v).unwrap();
                if e.a_mask >> p & 1 == 1 {
                    a_set.insert(v);
                }
                let c = node.children[0];
                let a_old = tables[c][ci].a_mask;
                if s >> p & 1 == 1 {
                    d_set.insert(v);
                    let nv_old = remove_bit(closed_in(&node.bag)[p], p);
                    let u_need = (remove_bit(u, p) | nv_old) & a_old;
                    stack.push((c, ci, remove_bit(s, p), u_need));
                } else {
                    stack.push((c, ci, remove_bit(s, p), remove_bit(u, p)));
                }
            }
            (NiceKind::Forget(v), Origin::Forget(ci)) => {
                let c = node.children[0];
                let p = nice.nodes[c].bag.binary_search(&v).unwrap();
                let ce = &tables[c][ci];
                let u_old = insert_bit(u, p, false);
                let s_out = insert_bit(s, p, false);
                let s_in = insert_bit(s, p, true);
                let next = if ce.cost(s_out, u_old) == Some(target) { s_out } else { s_in };
                stack.push((c, ci, next, u_old));
            }
            (NiceKind::Join, Origin::Join(i, j)) => {
                let (cl, cr) = (node.children[0], node.children[1]);
                let (l, r) = (&tables[cl][i], &tables[cr][j]);
                let closed = closed_in(&node.bag);
                let dominated = (0..node.bag.len()).filter(|&q| s >> q & 1 == 1).fold(0, |m, q| m | closed[q]);
                let rest = e.a_mask & !u & !dominated;
                let mut x = rest;
                loop {
                    let (ul, ur) = (u | x, u | (rest & !x));
                    if let (Some(a), Some(b)) = (l.cost(s, ul), r.cost(s, ur)) {
                        if a + b - s.count_ones() == target {
                            stack.push((cl, i, s, ul));
                            stack.push((cr, j, s, ur));
                            break;
                        }
                    }
                    assert!(x != 0, "join split must exist");
                    x = (x - 1) & rest;
                }
            }
            _ => unreachable!("origin matches node kind"),
        }
    }
    let cert = DominationCertificate::new(&a_set, &d_set);
    debug_assert_eq!(cert.value, best as usize);
    Ok((best as usize, cert))
}

/// γⁱ via a min-fill decomposition.
pub fn solve(g: &Graph, ceiling: usize) -> Result<(usize, DominationCertificate)> {
    gamma_i_treewidth(g, &heuristic_decomposition(g), ceiling)
}
