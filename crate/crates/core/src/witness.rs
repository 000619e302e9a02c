//! Solution witnesses and their verifiers.
//!
//! Verification never panics on semantic violations: `verify` returns false
//! for anything that fails the invariants, and the translation helpers return
//! errors for invalid witnesses.

use serde::Serialize;

use crate::graph::Graph;
use crate::matching::greedy_maximal_matching;
use crate::{Error, Result};

/// Set of vertex-disjoint edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices covered by the matching, in edge order.
    pub fn covered_vertices(&self) -> Vec<usize> {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// True iff the pairs are pairwise disjoint edges of `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for &(u, v) in &self.edges {
            if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
                return false;
            }
            if seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }

    /// True iff additionally every vertex of `g` is covered.
    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.verify(g) && 2 * self.edges.len() == g.vertex_count()
    }
}

/// Collection of vertex-disjoint triangles of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrianglePacking {
    pub triangles: Vec<[usize; 3]>,
}

impl TrianglePacking {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// All packed vertices, ascending.
    pub fn covered_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.triangles.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for t in &self.triangles {
            for &v in t {
                if v >= g.vertex_count() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            if !(g.has_edge(t[0], t[1]) && g.has_edge(t[0], t[2]) && g.has_edge(t[1], t[2])) {
                return false;
            }
        }
        true
    }
}

/// Partition of the vertex set into cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn size(&self) -> usize {
        self.cliques.len()
    }
}

/// True iff the cliques are disjoint, cover every vertex, and each induces a
/// complete subgraph of `g`.
pub fn verify_clique_cover(g: &Graph, cover: &CliqueCover) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut covered = 0usize;
    for clique in &cover.cliques {
        for (i, &u) in clique.iter().enumerate() {
            if u >= n || seen[u] {
                return false;
            }
            seen[u] = true;
            covered += 1;
            for &v in &clique[(i + 1)..] {
                if v >= n || !g.has_edge(u, v) {
                    return false;
                }
            }
        }
    }
    covered == n
}

/// Per-vertex color assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    /// True iff adjacent vertices differ and all indices are below the palette.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.colors.len() != g.vertex_count() {
            return false;
        }
        if self.colors.iter().any(|&c| c >= self.palette_size) {
            return false;
        }
        for (u, v) in g.edges() {
            if self.colors[u] == self.colors[v] {
                return false;
            }
        }
        true
    }
}

/// Turns a clique cover of `complement(g)` into a proper coloring of `g`
/// with palette size equal to the cover size.
pub fn coloring_from_cover(g: &Graph, cover: &CliqueCover) -> Result<Coloring> {
    if !verify_clique_cover(&g.complement(), cover) {
        return Err(Error::Invalid(
            "witness is not a clique cover of the complement graph".into(),
        ));
    }
    let mut colors = vec![0usize; g.vertex_count()];
    for (i, clique) in cover.cliques.iter().enumerate() {
        for &v in clique {
            colors[v] = i;
        }
    }
    Ok(Coloring {
        colors,
        palette_size: cover.size(),
    })
}

/// Turns a proper coloring of `g` into a clique cover of `complement(g)`
/// with one clique per used color, `palette_size` many for onto palettes.
pub fn cover_from_coloring(g: &Graph, coloring: &Coloring) -> Result<CliqueCover> {
    if !coloring.verify(g) {
        return Err(Error::Invalid("witness is not a proper coloring".into()));
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); coloring.palette_size];
    for (v, &c) in coloring.colors.iter().enumerate() {
        classes[c].push(v);
    }
    Ok(CliqueCover {
        cliques: classes.into_iter().filter(|c| !c.is_empty()).collect(),
    })
}

/// Proper coloring of `g` with at most `omega(g) + mu(complement(g))` colors.
///
/// A maximal matching `M` of the complement leaves its uncovered vertices
/// pairwise adjacent in `g`, so: one shared color per matched pair, one fresh
/// color per leftover clique vertex, `|M| + (n - 2|M|)` colors in total.
pub fn guarantee_witness_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let matching = greedy_maximal_matching(&g.complement());
    let mut colors = vec![usize::MAX; n];
    let mut next = 0usize;
    for &(u, v) in &matching.edges {
        colors[u] = next;
        colors[v] = next;
        next += 1;
    }
    for v in 0..n {
        if colors[v] == usize::MAX {
            colors[v] = next;
            next += 1;
        }
    }
    Coloring {
        colors,
        palette_size: next,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_cover_verification() {
        let k3 = Graph::complete(3);
        assert!(verify_clique_cover(
            &k3,
            &CliqueCover {
                cliques: vec![vec![0, 1, 2]]
            }
        ));

        let p3 = Graph::path(3);
        assert!(verify_clique_cover(
            &p3,
            &CliqueCover {
                cliques: vec![vec![0, 1], vec![2]]
            }
        ));
        // {0,2} is not an edge of the path
        assert!(!verify_clique_cover(
            &p3,
            &CliqueCover {
                cliques: vec![vec![0, 2], vec![1]]
            }
        ));
        // missing vertex
        assert!(!verify_clique_cover(
            &p3,
            &CliqueCover {
                cliques: vec![vec![0, 1]]
            }
        ));
        // double-covered vertex
        assert!(!verify_clique_cover(
            &k3,
            &CliqueCover {
                cliques: vec![vec![0, 1], vec![1, 2]]
            }
        ));
    }

    #[test]
    fn translate_all_singletons() {
        let g = Graph::cycle(4);
        let cover = CliqueCover {
            cliques: (0..4).map(|v| vec![v]).collect(),
        };
        let coloring = coloring_from_cover(&g, &cover).unwrap();
        assert_eq!(coloring.palette_size, 4);
        assert!(coloring.verify(&g));
        let back = cover_from_coloring(&g, &coloring).unwrap();
        assert_eq!(back.size(), 4);
    }

    #[test]
    fn translate_c5_three_coloring() {
        let c5 = Graph::cycle(5);
        let coloring = Coloring {
            colors: vec![0, 1, 0, 1, 2],
            palette_size: 3,
        };
        assert!(coloring.verify(&c5));
        let cover = cover_from_coloring(&c5, &coloring).unwrap();
        assert_eq!(cover.size(), 3);
        assert!(verify_clique_cover(&c5.complement(), &cover));
        let round = coloring_from_cover(&c5, &cover).unwrap();
        assert_eq!(round.palette_size, 3);
        assert!(round.verify(&c5));
    }

    #[test]
    fn translate_single_clique_of_empty_graph() {
        let g = Graph::new(4);
        let cover = CliqueCover {
            cliques: vec![vec![0, 1, 2, 3]],
        };
        let coloring = coloring_from_cover(&g, &cover).unwrap();
        assert_eq!(coloring.palette_size, 1);
        assert!(coloring.verify(&g));
    }

    #[test]
    fn translate_rejects_invalid() {
        let c5 = Graph::cycle(5);
        let bad = Coloring {
            colors: vec![0, 0, 1, 0, 1],
            palette_size: 2,
        };
        assert!(cover_from_coloring(&c5, &bad).is_err());
        let bad_cover = CliqueCover {
            cliques: vec![vec![0, 1], vec![2, 3, 4]],
        };
        assert!(coloring_from_cover(&c5, &bad_cover).is_err());
    }

    #[test]
    fn guarantee_coloring_on_complete_graph() {
        let g = Graph::complete(5);
        let c = guarantee_witness_coloring(&g);
        assert_eq!(c.palette_size, 5);
        assert!(c.verify(&g));
    }

    #[test]
    fn guarantee_coloring_on_empty_nine() {
        // complement is K9: greedy matches 4 pairs, one vertex left
        let g = Graph::new(9);
        let c = guarantee_witness_coloring(&g);
        assert_eq!(c.palette_size, 5);
        assert!(c.verify(&g));
    }

    #[test]
    fn guarantee_coloring_on_c5() {
        let c = guarantee_witness_coloring(&Graph::cycle(5));
        assert_eq!(c.palette_size, 3);
        assert!(c.verify(&Graph::cycle(5)));
        // omega(C5) + mu(complement C5) = 2 + 2
        assert!(c.palette_size <= 4);
    }
}
