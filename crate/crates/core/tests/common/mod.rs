//! Brute-force oracles shared by the integration tests. Everything here
//! works on `u32` masks and only uses the graph's adjacency.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use indom_core::dh::{profile, DhDecomposition, DhEntry, EdgeTable, INF as DH_INF};
use indom_core::oracle::gamma_of_set;
use indom_core::permutation::{GammaSets, PermutationDiagram};
use indom_core::treewidth::{NiceDecomposition, TableEntry};
use indom_core::{Graph, VertexSet};

pub fn closed_masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | 1 << u))
        .collect()
}

pub fn mask_of(s: &VertexSet) -> u32 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

pub fn cover(closed: &[u32], d: u32) -> u32 {
    let mut c = 0;
    let mut rest = d;
    while rest != 0 {
        c |= closed[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    c
}

pub fn is_independent(closed: &[u32], a: u32) -> bool {
    let mut rest = a;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        if closed[v] & a & !(1 << v) != 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

/// All submasks of `m`, including `0` and `m`.
pub fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

fn pareto<T: Ord + Clone>(items: Vec<T>, ge: impl Fn(&T, &T) -> bool) -> BTreeSet<T> {
    let uniq: BTreeSet<T> = items.into_iter().collect();
    uniq.iter()
        .filter(|x| !uniq.iter().any(|y| y != *x && ge(y, x)))
        .cloned()
        .collect()
}

/// Compares every DH node table with the frontier computed from scratch:
/// all independent sets of the subtree, each with its four costs found by
/// trying every dominator set inside the subtree.
pub fn check_dh_tables(g: &Graph, d: &DhDecomposition, tables: &[EdgeTable]) -> Result<(), String> {
    let closed = closed_masks(g);
    for (i, node) in d.nodes().iter().enumerate() {
        let w = mask_of(&node.members);
        let q = mask_of(&node.twinset);
        let mut entries = Vec::new();
        for a in submasks(w).filter(|&a| is_independent(&closed, a)) {
            let mut cost = [DH_INF; 4];
            for dm in submasks(w) {
                let covered = cover(&closed, dm);
                let size = dm.count_ones();
                for u in [false, true] {
                    let need = if u { a & !q } else { a };
                    if need & !covered != 0 {
                        continue;
                    }
                    for dq in [false, true] {
                        if dq && dm & q == 0 {
                            continue;
                        }
                        let p = profile(u, dq);
                        cost[p] = cost[p].min(size);
                    }
                }
            }
            entries.push(DhEntry { a_meets_twinset: a & q != 0, cost });
        }
        let want = pareto(entries, |x, y| x.dominates(y));
        let got: BTreeSet<DhEntry> = tables[i].entries.iter().copied().collect();
        if want != got {
            return Err(format!("node {i}: table {got:?}, brute force {want:?}"));
        }
    }
    Ok(())
}

type Frontier = BTreeMap<u32, BTreeSet<Vec<u32>>>;

fn tw_vector(bag_len: usize, a: u32, cost: impl Fn(u32, u32) -> u32) -> Vec<u32> {
    let mut v = Vec::new();
    for s in 0u32..1 << bag_len {
        let mut us: Vec<u32> = submasks(a).collect();
        us.sort_unstable();
        for u in us {
            v.push(cost(s, u));
        }
    }
    v
}

/// Compares every nice-node table with a brute-force frontier over all
/// independent partial sets `A` and dominator sets `D` in the subgraph below
/// the node.
pub fn check_tw_tables(g: &Graph, nice: &NiceDecomposition, tables: &[Vec<TableEntry>]) -> Result<(), String> {
    const INF: u32 = u32::MAX;
    let closed = closed_masks(g);
    let below = nice.below();
    for (i, node) in nice.nodes().iter().enumerate() {
        let vi = mask_of(&below[i]);
        let bag = &node.bag;
        let bag_mask = bag.iter().fold(0u32, |m, &v| m | 1 << v);
        let to_pos = |m: u32| -> u32 {
            bag.iter()
                .enumerate()
                .filter(|&(_, &v)| m >> v & 1 == 1)
                .fold(0, |acc, (p, _)| acc | 1 << p)
        };
        let ds: Vec<(u32, u32)> = submasks(vi).map(|d| (d, cover(&closed, d))).collect();
        let mut groups: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
        for a in submasks(vi).filter(|&a| is_independent(&closed, a)) {
            let a_pos = to_pos(a & bag_mask);
            // best[(s, u)] over bag positions.
            let mut best: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for &(d, cov) in &ds {
                let open = a & !cov;
                if open & !bag_mask != 0 {
                    continue;
                }
                let s = to_pos(d & bag_mask);
                let need = to_pos(open);
                for u in submasks(a_pos) {
                    if need & !u == 0 {
                        let e = best.entry((s, u)).or_insert(INF);
                        *e = (*e).min(d.count_ones());
                    }
                }
            }
            let vec = tw_vector(bag.len(), a_pos, |s, u| *best.get(&(s, u)).unwrap_or(&INF));
            groups.entry(a_pos).or_default().push(vec);
        }
        let want: Frontier = groups
            .into_iter()
            .map(|(a, vs)| (a, pareto(vs, |x, y| x.iter().zip(y).all(|(p, q)| p >= q))))
            .collect();
        let mut got: Frontier = BTreeMap::new();
        for e in &tables[i] {
            let v = tw_vector(bag.len(), e.a_mask(), |s, u| e.cost(s, u).unwrap_or(INF));
            got.entry(e.a_mask()).or_default().insert(v);
        }
        if want != got {
            return Err(format!("nice node {i} ({:?}, bag {bag:?}): frontier differs", node.kind));
        }
    }
    Ok(())
}

/// Every `(x, z, k)` with `M` an independent set whose rightmost segment is
/// `x`, `k = γ(M)`, and `z ∈ N[x]` lying in some minimum dominating set of
/// `M`, found by brute force.
pub fn replay_triples(d: &PermutationDiagram) -> BTreeSet<(usize, usize, usize)> {
    let g = d.to_graph();
    let n = g.n();
    let closed = closed_masks(&g);
    let mut out = BTreeSet::new();
    for m in 1u32..1 << n {
        if !is_independent(&closed, m) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
        let x = *members.iter().max_by_key(|&&v| d.top(v)).unwrap();
        let mset = g.set(members.iter().copied());
        let k = gamma_of_set(&g, &mset).0;
        for z in (0..n).filter(|&z| closed[x] >> z & 1 == 1) {
            let rest = mset.difference(&g.closed_row(z));
            if gamma_of_set(&g, &rest).0 + 1 == k {
                out.insert((x, z, k));
            }
        }
    }
    out
}

pub fn check_gamma_sets(d: &PermutationDiagram, sets: &GammaSets) -> Result<(), String> {
    let want = replay_triples(d);
    let got: BTreeSet<_> = sets.triples().into_iter().collect();
    let claimed_only: Vec<_> = got.difference(&want).collect();
    let missing: Vec<_> = want.difference(&got).collect();
    if claimed_only.is_empty() && missing.is_empty() {
        Ok(())
    } else {
        Err(format!("unrealized claims {claimed_only:?}, missing {missing:?}"))
    }
}

/// An induced P4, by scanning all ordered quadruples.
pub fn find_induced_p4(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for b in 0..n {
        for c in 0..n {
            if b == c || !g.has_edge(b, c) {
                continue;
            }
            for a in 0..n {
                if a == c || !g.has_edge(a, b) || g.has_edge(a, c) {
                    continue;
                }
                for d in 0..n {
                    if d == b || d == a || !g.has_edge(c, d) || g.has_edge(d, b) || g.has_edge(a, d) {
                        continue;
                    }
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// Repeatedly removes a simplicial vertex; succeeds iff the graph is chordal.
pub fn has_perfect_elimination_ordering(g: &Graph) -> bool {
    let mut alive = g.vertex_set();
    while !alive.is_empty() {
        let simplicial = alive.iter().find(|&v| {
            let nb: Vec<usize> = g.row(v).intersection(&alive).iter().collect();
            nb.iter().enumerate().all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        });
        match simplicial {
            Some(v) => {
                alive.remove(v);
            }
            None => return false,
        }
    }
    true
}
