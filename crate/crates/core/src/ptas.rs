//! Shifting scheme for planar graphs.
//!
//! Vertices are layered by BFS distance from a root set. For `k = ⌈1/ε⌉`
//! and each shift `ℓ ∈ 1..=k`, the levels congruent to `ℓ - 1` modulo `k`
//! are deleted; each remaining component spans fewer than `k` consecutive
//! levels and is solved exactly by the treewidth program. Pieces are induced
//! subgraphs, so their optima can overshoot γⁱ(G). The witness for a shift is
//! therefore taken from each piece together with its neighbors in the
//! deleted levels, which may dominate but not join `A`; it is extended to a
//! maximal independent set of `G` and re-measured there. The best re-measured
//! shift wins.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::certificate::DominationCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::gamma_of_set;
use crate::treewidth::{gamma_i_treewidth, gamma_i_treewidth_within, heuristic_decomposition, DEFAULT_WIDTH_CEILING};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    level: Vec<usize>,
    level_count: usize,
}

impl Layering {
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    pub fn level_count(&self) -> usize {
        self.level_count
    }

    /// Every edge joins equal or adjacent levels.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.level.len() == g.n() && g.edges().iter().all(|&(u, v)| self.level[u].abs_diff(self.level[v]) <= 1)
    }
}

/// BFS levels from `roots`. Components not reached restart at level 0 from
/// their smallest vertex.
pub fn bfs_layering(g: &Graph, roots: &VertexSet) -> Result<Layering> {
    if roots.is_empty() && g.n() > 0 {
        return Err(Error::Invalid("layering needs at least one root".into()));
    }
    let n = g.n();
    let mut level = vec![usize::MAX; n];
    let mut queue: Vec<usize> = roots.iter().collect();
    for &r in &queue {
        level[r] = 0;
    }
    let mut head = 0;
    let mut next_start = 0;
    loop {
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &w in g.neighbors(v) {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push(w);
                }
            }
        }
        while next_start < n && level[next_start] != usize::MAX {
            next_start += 1;
        }
        if next_start == n {
            break;
        }
        level[next_start] = 0;
        queue.push(next_start);
    }
    let level_count = level.iter().map(|&l| l + 1).max().unwrap_or(0);
    Ok(Layering { level, level_count })
}

/// Induced subgraph without the levels congruent to `shift - 1` mod `k`,
/// with the id map back to `g`.
pub fn shifted_subgraph(g: &Graph, layering: &Layering, k: usize, shift: usize) -> Result<(Graph, Vec<usize>)> {
    if k == 0 || !(1..=k).contains(&shift) {
        return Err(Error::Invalid(format!("shift {shift} outside 1..={k}")));
    }
    let keep = g.set((0..g.n()).filter(|&v| layering.level[v] % k != shift - 1));
    Ok(g.induced_subgraph(&keep))
}

#[derive(Debug, Clone)]
pub struct PtasOptions {
    pub roots: Option<VertexSet>,
    pub width_ceiling: usize,
}

impl Default for PtasOptions {
    fn default() -> Self {
        Self { roots: None, width_ceiling: DEFAULT_WIDTH_CEILING }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PtasResult {
    /// Best, over shifts, of γ of the shift's independent set measured in
    /// the whole graph. Never above γⁱ(G).
    pub value: usize,
    /// Best, over shifts, of the summed per-piece optima. Pieces are
    /// induced subgraphs, so this can exceed γⁱ(G).
    pub piece_value: usize,
    /// The winning independent set with a minimum dominator set in `G`.
    pub certificate: DominationCertificate,
    pub k: usize,
    pub best_shift: usize,
    pub level_count: usize,
    pub per_shift: Vec<usize>,
    pub per_shift_lifted: Vec<usize>,
    pub max_piece_width: usize,
}

/// Runs the shifting scheme with `k = ⌈1/ε⌉`.
pub fn ptas_gamma_i(g: &Graph, epsilon: f64, opts: &PtasOptions) -> Result<PtasResult> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Invalid(format!("epsilon {epsilon} outside (0, 1)")));
    }
    ptas_with_k(g, (1.0 / epsilon).ceil() as usize, opts)
}

/// Runs the shifting scheme for an explicit `k ≥ 1`.
pub fn ptas_with_k(g: &Graph, k: usize, opts: &PtasOptions) -> Result<PtasResult> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let roots = opts.roots.clone().unwrap_or_else(|| g.set((g.n() > 0).then_some(0)));
    let layering = bfs_layering(g, &roots)?;
    let mut per_shift = Vec::with_capacity(k);
    let mut per_shift_lifted = Vec::with_capacity(k);
    let mut best: Option<(usize, usize, VertexSet, VertexSet)> = None;
    let mut max_piece_width = 0;
    for shift in 1..=k {
        let (sub, map) = shifted_subgraph(g, &layering, k, shift)?;
        let (mut plain, mut haloed) = (g.empty_set(), g.empty_set());
        let mut total = 0;
        for comp in sub.connected_components() {
            let members = g.set(comp.iter().map(|x| map[x]));
            let (piece, pmap) = sub.induced_subgraph(&comp);
            let td = heuristic_decomposition(&piece);
            max_piece_width = max_piece_width.max(td.width());
            let (v, cert) = gamma_i_treewidth(&piece, &td, opts.width_ceiling).map_err(|e| piece_error(e, shift, piece.n()))?;
            total += v;
            plain.union_with(&g.set(cert.independent_set.iter().map(|&x| map[pmap[x]])));

            let mut widened = members.clone();
            for v in members.iter() {
                widened.union_with(g.row(v));
            }
            let (halo, hmap) = g.induced_subgraph(&widened);
            let inside = halo.set((0..halo.n()).filter(|&x| members.contains(hmap[x])));
            let td = heuristic_decomposition(&halo);
            max_piece_width = max_piece_width.max(td.width());
            let (_, cert) = gamma_i_treewidth_within(&halo, &td, opts.width_ceiling, &inside)
                .map_err(|e| piece_error(e, shift, halo.n()))?;
            haloed.union_with(&g.set(cert.independent_set.iter().map(|&x| hmap[x])));
        }
        let (lifted, a, d) = [plain, haloed]
            .into_iter()
            .map(|mut a| {
                extend_to_maximal(g, &mut a);
                let (value, d) = gamma_of_set(g, &a);
                (value, a, d)
            })
            .max_by_key(|c| c.0)
            .expect("two candidates");
        per_shift.push(total);
        per_shift_lifted.push(lifted);
        if best.as_ref().map_or(true, |b| lifted > b.0) {
            best = Some((lifted, shift, a, d));
        }
    }
    let (value, best_shift, a, d) = best.expect("k >= 1");
    Ok(PtasResult {
        value,
        piece_value: per_shift.iter().copied().max().unwrap_or(0),
        certificate: DominationCertificate::new(&a, &d),
        k,
        best_shift,
        level_count: layering.level_count,
        per_shift,
        per_shift_lifted,
        max_piece_width,
    })
}

fn piece_error(e: Error, shift: usize, size: usize) -> Error {
    match e {
        Error::WidthTooLarge { width, ceiling } => {
            Error::Invalid(format!("shift {shift}: piece with {size} vertices has width {width} above ceiling {ceiling}"))
        }
        other => other,
    }
}

/// Greedily adds vertices in id order until `a` is maximal independent in
/// `g`. Growing the set never lowers the number of dominators it needs.
fn extend_to_maximal(g: &Graph, a: &mut VertexSet) {
    for v in 0..g.n() {
        if !a.contains(v) && !g.row(v).intersects(a) {
            a.insert(v);
        }
    }
}
