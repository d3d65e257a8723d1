//! Seeded graph generators.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`, so a
//! `(descriptor, seed)` pair always yields the same graph. Descriptors are
//! written `name(arg, ...)`, for example `gnp(12,0.3)`, `grid(5,5)` or
//! `complete_multipartite(2,2,2)`.
//!
//! Algorithms:
//! - `random_cograph(n)`: start from `n` leaves; repeatedly merge two random
//!   pool members under a random union/join node.
//! - `random_chordal(n)`: vertex `v` attaches to a random clique grown
//!   greedily inside `N[u]` of a random earlier `u` (empty with
//!   probability 1/10), so reverse insertion order is a perfect
//!   elimination ordering.
//! - `random_dh(n)`: vertex `v` is added as a pendant, true twin or false
//!   twin of a random earlier vertex; ids are then randomly relabeled.
//! - `random_permutation(n)`: independent uniform top and bottom orders.
//! - `random_outerplanar(n)`: the cycle `0..n` plus the chords of a random
//!   polygon triangulation, each kept with probability 1/2.
//! - `random_tree(n)`: vertex `v` attaches to a uniform earlier vertex.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cograph::{Cotree, CotreeKind};
use crate::dh::{PruneOp, PruningSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::permutation::PermutationDiagram;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Gnp { n: usize, p: f64 },
    Path(usize),
    Cycle(usize),
    /// `K_{1,t}`: a center `0` and `t` leaves.
    Star(usize),
    Grid(usize, usize),
    Complete(usize),
    Empty(usize),
    CompleteMultipartite(Vec<usize>),
    /// Disjoint union of `t` triangles.
    Triangles(usize),
    Petersen,
    RandomTree(usize),
    RandomCograph(usize),
    RandomChordal(usize),
    RandomDh(usize),
    RandomPermutation(usize),
    RandomOuterplanar(usize),
}

/// Structure a generator knows about its output.
#[derive(Debug, Clone)]
pub enum Artifact {
    Cotree(Cotree),
    Pruning(PruningSequence),
    Diagram(PermutationDiagram),
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub artifact: Option<Artifact>,
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphSpec::*;
        match self {
            Gnp { n, p } => write!(f, "gnp({n},{p})"),
            Path(n) => write!(f, "path({n})"),
            Cycle(n) => write!(f, "cycle({n})"),
            Star(t) => write!(f, "star({t})"),
            Grid(r, c) => write!(f, "grid({r},{c})"),
            Complete(n) => write!(f, "complete({n})"),
            Empty(n) => write!(f, "empty({n})"),
            CompleteMultipartite(parts) => {
                let p: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                write!(f, "complete_multipartite({})", p.join(","))
            }
            Triangles(t) => write!(f, "triangles({t})"),
            Petersen => write!(f, "petersen()"),
            RandomTree(n) => write!(f, "random_tree({n})"),
            RandomCograph(n) => write!(f, "random_cograph({n})"),
            RandomChordal(n) => write!(f, "random_chordal({n})"),
            RandomDh(n) => write!(f, "random_dh({n})"),
            RandomPermutation(n) => write!(f, "random_permutation({n})"),
            RandomOuterplanar(n) => write!(f, "random_outerplanar({n})"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Generator(format!("{s}: {msg}"));
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) => {
                let rest = s[i + 1..].strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
                (&s[..i], rest)
            }
            None => (s, ""),
        };
        let args: Vec<&str> = args.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        let int = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| bad("missing argument"))?
                .parse()
                .map_err(|_| bad("expected a non-negative integer"))
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} argument(s)")))
            }
        };
        use GraphSpec::*;
        let spec = match name.trim() {
            "gnp" => {
                arity(2)?;
                let p: f64 = args[1].parse().map_err(|_| bad("expected a probability"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad("probability outside [0,1]"));
                }
                Gnp { n: int(0)?, p }
            }
            "complete_multipartite" | "multipartite" => {
                let parts = (0..args.len()).map(int).collect::<Result<Vec<_>>>()?;
                CompleteMultipartite(parts)
            }
            "grid" => {
                arity(2)?;
                Grid(int(0)?, int(1)?)
            }
            "petersen" => {
                arity(0)?;
                Petersen
            }
            other => {
                arity(1)?;
                let n = int(0)?;
                match other {
                    "path" => Path(n),
                    "cycle" => {
                        if n < 3 {
                            return Err(bad("a cycle needs at least 3 vertices"));
                        }
                        Cycle(n)
                    }
                    "star" => Star(n),
                    "complete" => Complete(n),
                    "empty" => Empty(n),
                    "triangles" => Triangles(n),
                    "random_tree" => RandomTree(n),
                    "random_cograph" => RandomCograph(n),
                    "random_chordal" => RandomChordal(n),
                    "random_dh" => RandomDh(n),
                    "random_permutation" => RandomPermutation(n),
                    "random_outerplanar" => RandomOuterplanar(n),
                    _ => return Err(bad("unknown generator")),
                }
            }
        };
        if spec.requires_vertex() && spec.vertex_count() == 0 {
            return Err(bad("needs at least one vertex"));
        }
        Ok(spec)
    }
}

impl GraphSpec {
    fn requires_vertex(&self) -> bool {
        matches!(
            self,
            GraphSpec::RandomCograph(_) | GraphSpec::RandomDh(_) | GraphSpec::RandomOuterplanar(_)
        )
    }

    pub fn vertex_count(&self) -> usize {
        use GraphSpec::*;
        match self {
            Gnp { n, .. } | Path(n) | Cycle(n) | Complete(n) | Empty(n) => *n,
            Star(t) => t + 1,
            Grid(r, c) => r * c,
            CompleteMultipartite(p) => p.iter().sum(),
            Triangles(t) => 3 * t,
            Petersen => 10,
            RandomTree(n) | RandomCograph(n) | RandomChordal(n) | RandomDh(n) | RandomPermutation(n)
            | RandomOuterplanar(n) => *n,
        }
    }
}

fn plain(graph: Graph) -> Generated {
    Generated { graph, artifact: None }
}

/// Builds the graph described by `spec` from `seed`.
pub fn generate(spec: &GraphSpec, seed: u64) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use GraphSpec::*;
    Ok(match spec {
        Gnp { n, p } => plain(gnp(*n, *p, &mut rng)),
        Path(n) => plain(path(*n)),
        Cycle(n) => plain(cycle(*n)?),
        Star(t) => plain(Graph::new(t + 1, (1..=*t).map(|i| (0, i)))?),
        Grid(r, c) => plain(grid(*r, *c)),
        Complete(n) => plain(Graph::complete(*n)),
        Empty(n) => plain(Graph::empty(*n)),
        CompleteMultipartite(parts) => plain(complete_multipartite(parts)),
        Triangles(t) => plain((0..*t).fold(Graph::empty(0), |g, _| g.disjoint_union(&Graph::complete(3)))),
        Petersen => plain(petersen()),
        RandomTree(n) => plain(random_tree(*n, &mut rng)),
        RandomCograph(n) => {
            let t = random_cotree(*n, &mut rng);
            Generated { graph: t.to_graph(), artifact: Some(Artifact::Cotree(t)) }
        }
        RandomChordal(n) => plain(random_chordal(*n, &mut rng)),
        RandomDh(n) => {
            let s = random_pruning_sequence(*n, &mut rng);
            Generated { graph: s.replay(), artifact: Some(Artifact::Pruning(s)) }
        }
        RandomPermutation(n) => {
            let d = random_diagram(*n, &mut rng);
            Generated { graph: d.to_graph(), artifact: Some(Artifact::Diagram(d)) }
        }
        RandomOuterplanar(n) => plain(random_outerplanar(*n, &mut rng)),
    })
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Generator(format!("cycle({n}) needs at least 3 vertices")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Row-major `r × c` grid: vertex `i*c + j`.
pub fn grid(r: usize, c: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                edges.push((v, v + 1));
            }
            if i + 1 < r {
                edges.push((v, v + c));
            }
        }
    }
    Graph::new(r * c, edges).expect("grid edges are valid")
}

pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(s));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("multipartite edges are valid")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, edges).expect("petersen edges are valid")
}

pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("gnp edges are valid")
}

pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    Graph::new(n, (1..n).map(|v| (rng.gen_range(0..v), v))).expect("tree edges are valid")
}

pub fn random_cotree<R: Rng>(n: usize, rng: &mut R) -> Cotree {
    assert!(n > 0, "a cotree needs at least one leaf");
    let mut parts: Vec<(CotreeKind, Vec<usize>)> = (0..n).map(|v| (CotreeKind::Leaf(v), Vec::new())).collect();
    let mut pool: Vec<usize> = (0..n).collect();
    while pool.len() > 1 {
        let a = pool.swap_remove(rng.gen_range(0..pool.len()));
        let b = pool.swap_remove(rng.gen_range(0..pool.len()));
        let kind = if rng.gen_bool(0.5) { CotreeKind::Union } else { CotreeKind::Join };
        parts.push((kind, vec![a, b]));
        pool.push(parts.len() - 1);
    }
    Cotree::from_parts(parts, pool[0]).expect("merge tree is a valid cotree")
}

pub fn random_chordal<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        if rng.gen_ratio(1, 10) {
            continue;
        }
        let u = rng.gen_range(0..v);
        let mut clique = vec![u];
        let mut cand = adj[u].clone();
        cand.shuffle(rng);
        for w in cand {
            if rng.gen_bool(0.5) && clique.iter().all(|&c| adj[c].contains(&w)) {
                clique.push(w);
            }
        }
        for &c in &clique {
            adj[c].push(v);
            adj[v].push(c);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, row)| row.iter().filter(move |&&w| u < w).map(move |&w| (u, w)));
    Graph::new(n, edges).expect("chordal edges are valid")
}

pub fn random_pruning_sequence<R: Rng>(n: usize, rng: &mut R) -> PruningSequence {
    assert!(n > 0, "a pruning sequence needs at least one vertex");
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    // Vertex ids[i] is created at step i; elimination runs in reverse.
    let mut ops = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (v, u) = (ids[i], ids[rng.gen_range(0..i)]);
        ops.push(match rng.gen_range(0..3) {
            0 => PruneOp::Pendant { v, u },
            1 => PruneOp::TrueTwin { v, u },
            _ => PruneOp::FalseTwin { v, u },
        });
    }
    ops.reverse();
    PruningSequence::new(n, ops).expect("creation order reversed is a valid elimination")
}

pub fn random_diagram<R: Rng>(n: usize, rng: &mut R) -> PermutationDiagram {
    let mut top: Vec<usize> = (0..n).collect();
    let mut bottom = top.clone();
    top.shuffle(rng);
    bottom.shuffle(rng);
    PermutationDiagram::new(top, bottom).expect("shuffles are permutations")
}

pub fn random_outerplanar<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut edges: Vec<(usize, usize)> = match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    // Triangulate polygon lo..=hi (edge lo-hi present) by picking an apex.
    let mut stack = vec![(0, n.saturating_sub(1))];
    while let Some((lo, hi)) = stack.pop() {
        if hi < lo + 2 {
            continue;
        }
        let apex = rng.gen_range(lo + 1..hi);
        for (a, b) in [(lo, apex), (apex, hi)] {
            if b > a + 1 && rng.gen_bool(0.5) {
                edges.push((a, b));
            }
            stack.push((a, b));
        }
    }
    Graph::new(n, edges).expect("outerplanar edges are valid")
}
