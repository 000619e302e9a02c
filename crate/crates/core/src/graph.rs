//! Simple undirected graphs on bit-row adjacency.
//!
//! Vertices are `0..n-1`; DIMACS 1-indexing is converted at the parse/emit
//! boundary. Adjacency rows are packed `u64` words, which keeps complements,
//! triangle scans, and common-neighborhood masks word-parallel. Graphs are
//! immutable once built (construction happens through `add_edge` before the
//! value is shared) and safe to use from multiple threads.

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Adjacency row of `v` as packed words.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency row as a single word; requires `n <= 64`.
    pub fn row_mask(&self, v: usize) -> u64 {
        assert!(self.n <= 64, "row_mask needs at most 64 vertices");
        if self.words == 0 {
            0
        } else {
            self.adj[v * self.words]
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        assert!(u != v, "self-loops are not representable");
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Complement graph: `{u,v}` becomes an edge iff `u != v` and it was not one.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for v in 0..self.n {
            let dst = &mut g.adj[v * self.words..(v + 1) * self.words];
            for (w, src) in dst.iter_mut().zip(self.row(v)) {
                *w = !src;
            }
            // clear the self-bit and the tail beyond n-1
            dst[v / 64] &= !(1u64 << (v % 64));
            if self.n % 64 != 0 {
                if let Some(last) = dst.last_mut() {
                    *last &= (1u64 << (self.n % 64)) - 1;
                }
            }
        }
        g
    }

    /// Induced subgraph on `vs` (deduplicated, sorted ascending), together
    /// with the map from new indices back to the original ones.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut picked: Vec<usize> = vs.to_vec();
        picked.sort_unstable();
        picked.dedup();
        if let Some(&bad) = picked.iter().find(|&&v| v >= self.n) {
            return Err(Error::Invalid(format!(
                "vertex {bad} out of range for n = {}",
                self.n
            )));
        }
        let mut g = Graph::new(picked.len());
        for (i, &u) in picked.iter().enumerate() {
            for (j, &v) in picked.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, picked))
    }

    /// DIMACS `.col` text with edges in ascending order.
    pub fn to_dimacs(&self) -> String {
        let edges = self.edges();
        let mut out = format!("p edge {} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    // -- named constructions used across tests and experiments --

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        if n >= 3 {
            for u in 0..n {
                g.add_edge(u, (u + 1) % n);
            }
        } else if n == 2 {
            g.add_edge(0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// Star with `leaves` leaves attached to vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            word_idx: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + bit)
    }
}

/// Parses DIMACS `.col` text: `c` comments, one `p edge n m` line, `e u v`
/// edge lines with 1-indexed endpoints. Duplicate edges merge silently;
/// self-loop lines are an error.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next().unwrap() {
            "c" => continue,
            "p" => {
                if graph.is_some() {
                    return Err(Error::Parse(format!(
                        "line {}: duplicate problem line",
                        lineno + 1
                    )));
                }
                let kind = tokens.next().unwrap_or("");
                if kind != "edge" && kind != "edges" && kind != "col" {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'p edge', got 'p {kind}'",
                        lineno + 1
                    )));
                }
                let n: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad vertex count", lineno + 1)))?;
                // The edge count is advisory in practice; parse and ignore.
                let _m: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad edge count", lineno + 1)))?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| {
                    Error::Parse(format!("line {}: edge before problem line", lineno + 1))
                })?;
                let u: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad endpoint", lineno + 1)))?;
                let v: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad endpoint", lineno + 1)))?;
                if u == 0 || v == 0 || u > g.n || v > g.n {
                    return Err(Error::Parse(format!(
                        "line {}: endpoint out of range 1..={}",
                        lineno + 1,
                        g.n
                    )));
                }
                if u == v {
                    return Err(Error::Parse(format!(
                        "line {}: self-loop on vertex {u}",
                        lineno + 1
                    )));
                }
                g.add_edge(u - 1, v - 1);
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unexpected line type '{other}'",
                    lineno + 1
                )));
            }
        }
    }
    graph.ok_or_else(|| Error::Parse("missing problem line".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_gnp;
    use proptest::prelude::*;

    #[test]
    fn parse_small() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_isolated_vertex() {
        let g = parse_dimacs("p edge 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 5\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_dimacs("p edge 2 0\np edge 2 0\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 2 2\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_dimacs(""), Err(Error::Parse(_))));
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn comments_ignored() {
        let g = parse_dimacs("c hi\np edge 2 1\nc mid\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        let g = Graph::new(4).complement();
        assert_eq!(g, Graph::complete(4));
    }

    #[test]
    fn complement_of_c5_is_pentagram() {
        // complement(0-1-2-3-4-0) is the cycle 0-2-4-1-3-0
        let c5 = Graph::cycle(5);
        let comp = c5.complement();
        let mut expect = Graph::new(5);
        for (u, v) in [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)] {
            expect.add_edge(u, v);
        }
        assert_eq!(comp, expect);
    }

    #[test]
    fn induced_examples() {
        let (k3, map) = Graph::complete(4).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 3]);

        let (empty, _) = Graph::cycle(5).induced_subgraph(&[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);

        let (p3, _) = Graph::cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p3, Graph::path(3));

        assert!(Graph::cycle(5).induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn dimacs_emission_order() {
        let mut g = Graph::new(3);
        g.add_edge(2, 0);
        g.add_edge(1, 2);
        assert_eq!(g.to_dimacs(), "p edge 3 2\ne 1 3\ne 2 3\n");
    }

    proptest! {
        #[test]
        fn complement_is_involutive(seed in 0u64..500, n in 0usize..40) {
            let g = gen_gnp(n, 0.4, seed);
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn dimacs_round_trip(seed in 0u64..500, n in 1usize..30) {
            let g = gen_gnp(n, 0.3, seed);
            let parsed = parse_dimacs(&g.to_dimacs()).unwrap();
            prop_assert_eq!(parsed, g);
        }
    }
}
