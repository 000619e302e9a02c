//! Brute-force ground truth for cross-validating the randomized solvers.
//!
//! Every routine here is exact and guarded by an explicit size limit. The
//! chromatic solver has a second, independent implementation
//! ([`chromatic_number_branch_bound`]) so the two can vouch for each other
//! before either is trusted as an oracle.

use crate::graph::Graph;
use crate::{Error, Result};

pub const CHROMATIC_MAX_N: usize = 18;
pub const MIS_MAX_N: usize = 40;
pub const MATCHING_MAX_N: usize = 14;
pub const BRANCH_BOUND_MAX_N: usize = 10;

/// Exact chromatic number by dynamic programming over vertex subsets:
/// `chi(T) = 1 + min chi(T \ I)` over independent `I` containing `min(T)`.
pub fn chromatic_number_exact(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > CHROMATIC_MAX_N {
        return Err(Error::Guard(format!(
            "chromatic oracle limited to n <= {CHROMATIC_MAX_N}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let rows: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // independent[m]: no edge inside subset m
    let mut independent = vec![false; (full as usize) + 1];
    independent[0] = true;
    for m in 1..=(full as usize) {
        let v = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        independent[m] = independent[rest] && (rows[v] & rest as u32) == 0;
    }

    let mut chi = vec![u8::MAX; (full as usize) + 1];
    chi[0] = 0;
    for m in 1..=(full as usize) {
        let vbit = 1usize << m.trailing_zeros();
        let mut best = u8::MAX;
        // Enumerate submasks of m containing the lowest vertex: some optimum
        // coloring gives that vertex's class exactly such a set.
        let mut sub = m;
        loop {
            if sub & vbit != 0 && independent[sub] {
                let rec = chi[m & !sub];
                if rec + 1 < best {
                    best = rec + 1;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & m;
        }
        chi[m] = best;
    }
    Ok(chi[full as usize] as usize)
}

/// Second chromatic oracle: color vertices in index order, allowing at most
/// one brand-new color per step. Independent of the subset DP.
pub fn chromatic_number_branch_bound(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > BRANCH_BOUND_MAX_N {
        return Err(Error::Guard(format!(
            "branch-and-bound chromatic oracle limited to n <= {BRANCH_BOUND_MAX_N}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    for k in 1..=n {
        let mut colors = vec![usize::MAX; n];
        if colorable(g, k, 0, 0, &mut colors) {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

fn colorable(g: &Graph, k: usize, v: usize, used: usize, colors: &mut Vec<usize>) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    let cap = k.min(used + 1);
    for c in 0..cap {
        let clash = g.neighbors(v).any(|u| u < v && colors[u] == c);
        if !clash {
            colors[v] = c;
            if colorable(g, k, v + 1, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

/// Exact clique cover number: the chromatic number of the complement.
pub fn clique_cover_number_exact(g: &Graph) -> Result<usize> {
    chromatic_number_exact(&g.complement())
}

/// Exact maximum independent set size by branch and bound on bit rows.
pub fn max_independent_set_exact(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > MIS_MAX_N {
        return Err(Error::Guard(format!(
            "independent-set oracle limited to n <= {MIS_MAX_N}, got {n}"
        )));
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row_mask(v)).collect();
    let full = if n == 64 {
        u64::MAX
    } else {
        (1u64 << n).wrapping_sub(1)
    };
    let mut best = 0usize;
    mis_branch(&rows, full, 0, &mut best);
    Ok(best)
}

fn mis_branch(rows: &[u64], alive: u64, current: usize, best: &mut usize) {
    let live = alive.count_ones() as usize;
    if current + live <= *best {
        return;
    }
    if alive == 0 {
        *best = (*best).max(current);
        return;
    }
    // Branch on a maximum-degree vertex; if none has neighbors the whole
    // remainder is independent.
    let mut pivot = usize::MAX;
    let mut deg = 0usize;
    let mut scan = alive;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let d = (rows[v] & alive).count_ones() as usize;
        if pivot == usize::MAX || d > deg {
            deg = d;
            pivot = v;
        }
    }
    if deg == 0 {
        *best = (*best).max(current + live);
        return;
    }
    let bit = 1u64 << pivot;
    mis_branch(rows, alive & !(rows[pivot] | bit), current + 1, best);
    mis_branch(rows, alive & !bit, current, best);
}

/// Exact maximum matching size by exhaustive recursion over edges.
pub fn maximum_matching_exact(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > MATCHING_MAX_N {
        return Err(Error::Guard(format!(
            "matching oracle limited to n <= {MATCHING_MAX_N}, got {n}"
        )));
    }
    let rows: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    Ok(matching_branch(&rows, full))
}

fn matching_branch(rows: &[u32], alive: u32) -> usize {
    if alive == 0 {
        return 0;
    }
    let v = alive.trailing_zeros() as usize;
    let rest = alive & !(1 << v);
    // Either v stays unmatched, or it pairs with a live neighbor.
    let mut best = matching_branch(rows, rest);
    let mut nbrs = rows[v] & rest;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        best = best.max(1 + matching_branch(rows, rest & !(1 << u)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_gnp;

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number_exact(&Graph::complete(6)).unwrap(), 6);
        assert_eq!(chromatic_number_exact(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number_exact(&Graph::petersen()).unwrap(), 3);
        assert_eq!(chromatic_number_exact(&Graph::new(0)).unwrap(), 0);
        assert_eq!(chromatic_number_exact(&Graph::new(7)).unwrap(), 1);
    }

    #[test]
    fn chromatic_oracles_cross_check() {
        for seed in 0..40 {
            let n = 3 + (seed as usize % 8);
            let g = gen_gnp(n, [0.2, 0.5, 0.8][seed as usize % 3], seed);
            assert_eq!(
                chromatic_number_exact(&g).unwrap(),
                chromatic_number_branch_bound(&g).unwrap(),
                "{g:?}"
            );
        }
        assert_eq!(
            chromatic_number_branch_bound(&Graph::petersen()).unwrap(),
            3
        );
    }

    #[test]
    fn cover_examples() {
        assert_eq!(clique_cover_number_exact(&Graph::new(6)).unwrap(), 6);
        assert_eq!(clique_cover_number_exact(&Graph::complete(6)).unwrap(), 1);
        assert_eq!(clique_cover_number_exact(&Graph::cycle(5)).unwrap(), 3);
    }

    #[test]
    fn mis_examples() {
        assert_eq!(max_independent_set_exact(&Graph::complete(8)).unwrap(), 1);
        assert_eq!(max_independent_set_exact(&Graph::new(8)).unwrap(), 8);
        assert_eq!(max_independent_set_exact(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(max_independent_set_exact(&Graph::petersen()).unwrap(), 4);
    }

    #[test]
    fn matching_examples() {
        assert_eq!(maximum_matching_exact(&Graph::complete(4)).unwrap(), 2);
        assert_eq!(maximum_matching_exact(&Graph::star(5)).unwrap(), 1);
        assert_eq!(maximum_matching_exact(&Graph::petersen()).unwrap(), 5);
    }

    #[test]
    fn alpha_at_most_theta() {
        for seed in 100..130 {
            let g = gen_gnp(9, 0.4, seed);
            let alpha = max_independent_set_exact(&g).unwrap();
            let theta = clique_cover_number_exact(&g).unwrap();
            assert!(alpha <= theta, "{g:?}");
        }
    }

    #[test]
    fn clique_plus_complement_matching_bounded_by_n() {
        for seed in 200..240 {
            let n = 5 + (seed as usize % 8);
            let g = gen_gnp(n, 0.5, seed);
            let omega = max_independent_set_exact(&g.complement()).unwrap();
            let mu_bar = maximum_matching_exact(&g.complement()).unwrap();
            assert!(omega + mu_bar <= n, "{g:?}");
        }
    }

    #[test]
    fn guards_enforced() {
        assert!(chromatic_number_exact(&Graph::new(19)).is_err());
        assert!(max_independent_set_exact(&Graph::new(41)).is_err());
        assert!(maximum_matching_exact(&Graph::new(15)).is_err());
    }
}
