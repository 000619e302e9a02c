//! Constructive reduction from colored clique to below-half clique cover.
//!
//! From a k-partite instance on `k * n` vertices the generator builds a graph
//! on `N = 2kn + 2` vertices whose clique covers of size `l = k(n-1) + 2`
//! exist exactly when the instance has a clique with one vertex per part.
//! The construction threads a path through each part (alternating original
//! vertices and fresh bridge vertices), anchored at a clique of `k + 2` hub
//! vertices, and always carries a perfect matching. Small instances can be
//! checked against the exact cover oracle.

use serde::Serialize;

use crate::graph::Graph;
use crate::oracle::{clique_cover_number_exact, CHROMATIC_MAX_N};
use crate::rng::Rng;
use crate::witness::Matching;
use crate::{Error, Result};

/// k-partite instance: parts of `part_size` vertices each, edges only across
/// parts. Vertex `(i, j)` lives at index `i * part_size + j`.
#[derive(Clone, Debug)]
pub struct ColoredCliqueInstance {
    pub parts: usize,
    pub part_size: usize,
    pub graph: Graph,
}

impl ColoredCliqueInstance {
    pub fn new(parts: usize, part_size: usize) -> Self {
        ColoredCliqueInstance {
            parts,
            part_size,
            graph: Graph::new(parts * part_size),
        }
    }

    pub fn vertex(&self, part: usize, rank: usize) -> usize {
        debug_assert!(part < self.parts && rank < self.part_size);
        part * self.part_size + rank
    }

    fn part_of(&self, v: usize) -> usize {
        v / self.part_size
    }

    /// Adds a cross edge; intra-part edges are rejected.
    pub fn add_cross_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.graph.vertex_count() || b >= self.graph.vertex_count() {
            return Err(Error::Invalid("cross-edge endpoint out of range".into()));
        }
        if self.part_of(a) == self.part_of(b) {
            return Err(Error::Invalid(format!(
                "edge {{{a},{b}}} stays inside part {}",
                self.part_of(a)
            )));
        }
        self.graph.add_edge(a, b);
        Ok(())
    }

    /// Instance with every admissible cross pair drawn with probability `prob`.
    pub fn random(parts: usize, part_size: usize, prob: f64, seed: u64) -> Self {
        let mut inst = Self::new(parts, part_size);
        let mut rng = Rng::from_seed_u64(seed);
        let nv = parts * part_size;
        for a in 0..nv {
            for b in (a + 1)..nv {
                if inst.part_of(a) != inst.part_of(b) && rng.next_f64() < prob {
                    inst.graph.add_edge(a, b);
                }
            }
        }
        inst
    }

    /// Brute-force check for a clique with one vertex per part.
    pub fn has_colored_clique(&self) -> bool {
        let mut choice = vec![0usize; self.parts];
        self.search_clique(0, &mut choice)
    }

    fn search_clique(&self, part: usize, choice: &mut Vec<usize>) -> bool {
        if part == self.parts {
            return true;
        }
        'next: for rank in 0..self.part_size {
            let v = self.vertex(part, rank);
            for earlier in 0..part {
                if !self.graph.has_edge(self.vertex(earlier, choice[earlier]), v) {
                    continue 'next;
                }
            }
            choice[part] = rank;
            if self.search_clique(part + 1, choice) {
                return true;
            }
        }
        false
    }
}

/// Role of a vertex in the reduced graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum ReducedLabel {
    /// Vertex carried over from the instance, `(part, rank)`.
    Original { part: usize, rank: usize },
    /// Fresh degree-2 vertex between consecutive originals of one part.
    Bridge { part: usize, rank: usize },
    /// Member of the hub clique of size `parts + 2`.
    Anchor { index: usize },
}

impl std::fmt::Display for ReducedLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReducedLabel::Original { part, rank } => write!(f, "orig:{part}:{rank}"),
            ReducedLabel::Bridge { part, rank } => write!(f, "bridge:{part}:{rank}"),
            ReducedLabel::Anchor { index } => write!(f, "anchor:{index}"),
        }
    }
}

/// Output of the reduction: the cover-side graph, the cover-size target, and
/// per-vertex labels.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub target: usize,
    pub labels: Vec<ReducedLabel>,
    parts: usize,
    part_size: usize,
}

impl ReducedInstance {
    fn original(&self, part: usize, rank: usize) -> usize {
        part * self.part_size + rank
    }

    fn bridge(&self, part: usize, rank: usize) -> usize {
        self.parts * self.part_size + part * (self.part_size - 1) + rank
    }

    fn anchor(&self, index: usize) -> usize {
        self.parts * self.part_size + self.parts * (self.part_size - 1) + index
    }
}

/// Builds the reduced graph on `2 k n + 2` vertices with cover-size target
/// `k (n - 1) + 2`: the instance's cross edges, a hub clique of `k + 2`
/// anchors, an edge from anchor `i` to the first original of part `i`, and
/// bridges between consecutive originals of each part.
pub fn build_reduction(inst: &ColoredCliqueInstance) -> Result<ReducedInstance> {
    let (k, n) = (inst.parts, inst.part_size);
    if k == 0 || n == 0 {
        return Err(Error::Invalid("reduction needs nonempty parts".into()));
    }
    // The instance type prevents intra-part edges; re-validate anyway since
    // the graph field is public.
    for (a, b) in inst.graph.edges() {
        if inst.part_of(a) == inst.part_of(b) {
            return Err(Error::Invalid(format!(
                "instance has intra-part edge {{{a},{b}}}"
            )));
        }
    }

    let total = 2 * k * n + 2;
    let mut labels = Vec::with_capacity(total);
    for part in 0..k {
        for rank in 0..n {
            labels.push(ReducedLabel::Original { part, rank });
        }
    }
    for part in 0..k {
        for rank in 0..(n - 1) {
            labels.push(ReducedLabel::Bridge { part, rank });
        }
    }
    for index in 0..(k + 2) {
        labels.push(ReducedLabel::Anchor { index });
    }
    debug_assert_eq!(labels.len(), total);

    let mut out = ReducedInstance {
        graph: Graph::new(total),
        target: k * (n - 1) + 2,
        labels,
        parts: k,
        part_size: n,
    };
    for (a, b) in inst.graph.edges() {
        out.graph.add_edge(a, b);
    }
    for i in 0..(k + 2) {
        for j in (i + 1)..(k + 2) {
            let (a, b) = (out.anchor(i), out.anchor(j));
            out.graph.add_edge(a, b);
        }
    }
    for part in 0..k {
        let (a, b) = (out.anchor(part), out.original(part, 0));
        out.graph.add_edge(a, b);
        for rank in 0..(n - 1) {
            let w = out.bridge(part, rank);
            out.graph.add_edge(w, out.original(part, rank));
            out.graph.add_edge(w, out.original(part, rank + 1));
        }
    }
    Ok(out)
}

/// The perfect matching every reduced graph carries: anchor `i` with the
/// first original of part `i`, each bridge with the next original of its
/// part, and the two spare anchors with each other (they are adjacent inside
/// the hub clique, which the explicit path edges alone would leave exposed).
pub fn canonical_perfect_matching(reduced: &ReducedInstance) -> Matching {
    let (k, n) = (reduced.parts, reduced.part_size);
    let mut edges = Vec::with_capacity(k * n + 1);
    for part in 0..k {
        edges.push((reduced.anchor(part), reduced.original(part, 0)));
        for rank in 0..(n - 1) {
            edges.push((reduced.bridge(part, rank), reduced.original(part, rank + 1)));
        }
    }
    edges.push((reduced.anchor(k), reduced.anchor(k + 1)));
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

/// Checks, by exhaustive oracles, that the instance has a colored clique
/// exactly when the reduced graph has a cover of the target size.
pub fn verify_equivalence_small(inst: &ColoredCliqueInstance) -> Result<bool> {
    let total = 2 * inst.parts * inst.part_size + 2;
    if total > CHROMATIC_MAX_N {
        return Err(Error::Guard(format!(
            "equivalence check limited to reduced graphs with <= {CHROMATIC_MAX_N} vertices, got {total}"
        )));
    }
    let reduced = build_reduction(inst)?;
    let theta = clique_cover_number_exact(&reduced.graph)?;
    Ok(inst.has_colored_clique() == (theta <= reduced.target))
}
