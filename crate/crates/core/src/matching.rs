//! Matchings and triangle packings.
//!
//! The greedy routines pick lexicographically smallest candidates and are
//! fully deterministic; they guarantee maximality only. `maximum_matching`
//! is an Edmonds blossom implementation for exact maximum cardinality on
//! general graphs.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::witness::{Matching, TrianglePacking};

/// Maximal matching by lexicographic edge scan.
///
/// Vertices left unmatched form an independent set.
pub fn greedy_maximal_matching(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let mut taken = vec![false; n];
    let mut edges = Vec::new();
    for u in 0..n {
        if taken[u] {
            continue;
        }
        for v in g.neighbors(u) {
            if v > u && !taken[v] {
                taken[u] = true;
                taken[v] = true;
                edges.push((u, v));
                break;
            }
        }
    }
    Matching { edges }
}

/// Maximal triangle packing: repeatedly remove the lexicographically smallest
/// vertex triple `(i < j < k)` inducing a triangle until none remains.
///
/// The graph minus all packed vertices is triangle-free.
pub fn greedy_triangle_packing(g: &Graph) -> TrianglePacking {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut triangles = Vec::new();
    while let Some(t) = smallest_triangle(g, &alive) {
        for &v in &t {
            alive[v] = false;
        }
        triangles.push(t);
    }
    TrianglePacking { triangles }
}

fn smallest_triangle(g: &Graph, alive: &[bool]) -> Option<[usize; 3]> {
    let n = g.vertex_count();
    for i in 0..n {
        if !alive[i] {
            continue;
        }
        for j in g.neighbors(i) {
            if j <= i || !alive[j] {
                continue;
            }
            for k in g.neighbors(i) {
                if k > j && alive[k] && g.has_edge(j, k) {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Maximum-cardinality matching in a general graph (Edmonds blossom).
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let mut state = Blossom {
        g,
        mate: vec![None; n],
        parent: vec![usize::MAX; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
    };
    // Cheap greedy warm start; the search below only augments.
    for u in 0..n {
        if state.mate[u].is_none() {
            for v in g.neighbors(u) {
                if state.mate[v].is_none() {
                    state.mate[u] = Some(v);
                    state.mate[v] = Some(u);
                    break;
                }
            }
        }
    }
    for root in 0..n {
        if state.mate[root].is_none() {
            state.augment_from(root);
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        if let Some(v) = state.mate[u] {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Matching { edges }
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom<'_> {
    fn augment_from(&mut self, root: usize) {
        let n = self.g.vertex_count();
        self.parent.iter_mut().for_each(|p| *p = usize::MAX);
        self.used.iter_mut().for_each(|u| *u = false);
        for (v, b) in self.base.iter_mut().enumerate() {
            *b = v;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut exposed = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for u in self.g.neighbors(v) {
                if self.base[v] == self.base[u] || self.mate[v] == Some(u) {
                    continue;
                }
                let u_is_even =
                    u == root || self.mate[u].is_some_and(|mu| self.parent[mu] != usize::MAX);
                if u_is_even {
                    // An even-even edge closes an odd cycle: contract the blossom.
                    let anchor = self.lowest_common_base(v, u);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, anchor, u);
                    self.mark_path(u, anchor, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = anchor;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[u] == usize::MAX {
                    self.parent[u] = v;
                    match self.mate[u] {
                        None => {
                            exposed = Some(u);
                            break 'bfs;
                        }
                        Some(mu) => {
                            if !self.used[mu] {
                                self.used[mu] = true;
                                queue.push_back(mu);
                            }
                        }
                    }
                }
            }
        }
        if let Some(mut u) = exposed {
            // Flip matched/unmatched along the alternating path back to the root.
            loop {
                let pv = self.parent[u];
                let next = self.mate[pv];
                self.mate[u] = Some(pv);
                self.mate[pv] = Some(u);
                match next {
                    Some(x) => u = x,
                    None => break,
                }
            }
        }
    }

    fn lowest_common_base(&self, a: usize, b: usize) -> usize {
        let n = self.g.vertex_count();
        let mut marked = vec![false; n];
        let mut v = a;
        loop {
            v = self.base[v];
            marked[v] = true;
            match self.mate[v] {
                None => break,
                Some(mv) => {
                    if self.parent[mv] == usize::MAX {
                        break;
                    }
                    v = self.parent[mv];
                }
            }
        }
        let mut v = b;
        loop {
            v = self.base[v];
            if marked[v] {
                return v;
            }
            v = self.parent[self.mate[v].expect("interior tree vertex is matched")];
        }
    }

    fn mark_path(&mut self, mut v: usize, anchor: usize, mut child: usize) {
        while self.base[v] != anchor {
            let mv = self.mate[v].expect("blossom path vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mv]] = true;
            self.parent[v] = child;
            child = mv;
            v = self.parent[mv];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_gnp;
    use crate::oracle::maximum_matching_exact;

    #[test]
    fn greedy_matching_on_path() {
        let m = greedy_maximal_matching(&Graph::path(4));
        assert_eq!(m.edges, vec![(0, 1), (2, 3)]);
        assert!(m.verify(&Graph::path(4)));
    }

    #[test]
    fn greedy_matching_on_triangle() {
        let m = greedy_maximal_matching(&Graph::complete(3));
        assert_eq!(m.edges, vec![(0, 1)]);
    }

    #[test]
    fn greedy_matching_on_empty() {
        assert!(greedy_maximal_matching(&Graph::new(5)).is_empty());
    }

    #[test]
    fn greedy_matching_leaves_independent_set() {
        for seed in 0..30 {
            let g = gen_gnp(12, 0.4, seed);
            let m = greedy_maximal_matching(&g);
            assert!(m.verify(&g));
            let mut matched = vec![false; 12];
            for (u, v) in m.covered_vertices().chunks(2).map(|c| (c[0], c[1])) {
                matched[u] = true;
                matched[v] = true;
            }
            for u in 0..12 {
                for v in (u + 1)..12 {
                    if !matched[u] && !matched[v] {
                        assert!(!g.has_edge(u, v), "unmatched pair {u},{v} adjacent");
                    }
                }
            }
        }
    }

    #[test]
    fn packing_on_k3() {
        let p = greedy_triangle_packing(&Graph::complete(3));
        assert_eq!(p.triangles, vec![[0, 1, 2]]);
    }

    #[test]
    fn packing_on_triangle_free() {
        assert!(greedy_triangle_packing(&Graph::cycle(5)).is_empty());
    }

    #[test]
    fn packing_on_k6_is_lexicographic() {
        let p = greedy_triangle_packing(&Graph::complete(6));
        assert_eq!(p.triangles, vec![[0, 1, 2], [3, 4, 5]]);
    }

    #[test]
    fn packing_is_maximal() {
        for seed in 0..30 {
            let g = gen_gnp(14, 0.5, seed);
            let p = greedy_triangle_packing(&g);
            assert!(p.verify(&g));
            let mut alive = vec![true; 14];
            for v in p.covered_vertices() {
                alive[v] = false;
            }
            assert!(smallest_triangle(&g, &alive).is_none(), "residual triangle");
        }
    }

    #[test]
    fn blossom_on_k4() {
        assert_eq!(maximum_matching(&Graph::complete(4)).len(), 2);
    }

    #[test]
    fn blossom_on_petersen() {
        assert_eq!(maximum_matching(&Graph::petersen()).len(), 5);
    }

    #[test]
    fn blossom_on_star() {
        assert_eq!(maximum_matching(&Graph::star(3)).len(), 1);
    }

    #[test]
    fn blossom_matches_exhaustive_oracle() {
        for seed in 0..60 {
            let n = 4 + (seed as usize % 9);
            let prob = [0.2, 0.5, 0.8][seed as usize % 3];
            let g = gen_gnp(n, prob, seed);
            let m = maximum_matching(&g);
            assert!(m.verify(&g));
            assert_eq!(m.len(), maximum_matching_exact(&g).unwrap(), "{g:?}");
        }
    }

    #[test]
    fn blossom_needs_contraction() {
        // Two triangles joined by a bridge; greedy warm starts can strand
        // vertices unless blossoms are handled.
        let mut g = Graph::new(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)] {
            g.add_edge(u, v);
        }
        assert_eq!(maximum_matching(&g).len(), 3);
    }
}
