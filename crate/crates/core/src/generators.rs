//! Random instance generators, all deterministic per seed.

use crate::graph::Graph;
use crate::rng::Rng;
use crate::{Error, Result};

/// Erdos-Renyi graph: each unordered pair is an edge with probability `prob`.
pub fn gen_gnp(n: usize, prob: f64, seed: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut rng = Rng::from_seed_u64(seed);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.next_f64() < prob {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Instance with a planted co-triangle modulator of size `p_mod`.
///
/// Built on the clique-cover side: a random bipartite (hence triangle-free)
/// graph on `n - p_mod` vertices plus `p_mod` tail vertices wired to every
/// other vertex with probability 1/2. Returns the coloring-side complement
/// together with the planted modulator; deleting the modulator from the
/// cover side is triangle-free by construction.
pub fn gen_planted_comodulator(n: usize, p_mod: usize, seed: u64) -> Result<(Graph, Vec<usize>)> {
    if p_mod > n {
        return Err(Error::Invalid(format!(
            "modulator size {p_mod} exceeds vertex count {n}"
        )));
    }
    let base = n - p_mod;
    let mut rng = Rng::from_seed_u64(seed);
    let sides: Vec<bool> = (0..base).map(|_| rng.next_u64() & 1 == 1).collect();
    let mut cover_side = Graph::new(n);
    for u in 0..base {
        for v in (u + 1)..base {
            if sides[u] != sides[v] && rng.next_f64() < 0.5 {
                cover_side.add_edge(u, v);
            }
        }
    }
    for m in base..n {
        for u in 0..m {
            if rng.next_f64() < 0.5 {
                cover_side.add_edge(m, u);
            }
        }
    }
    let modulator: Vec<usize> = (base..n).collect();
    Ok((cover_side.complement(), modulator))
}
