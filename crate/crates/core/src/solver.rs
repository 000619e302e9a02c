//! Clique cover (and coloring, via the complement) parameterized by a
//! triangle-free modulator, in randomized `O*(2^p)` time and space.
//!
//! Given a graph `g`, a vertex set `s` of size `p` with `g - s` triangle-free,
//! and a target `t`, the solver decides whether `g` admits a clique cover of
//! at most `t` cliques. Every clique meets the outside part `V \ s` in 0, 1,
//! or 2 vertices, so covers split by type: the counts of cliques with 0 and 1
//! outside contacts determine the rest. For each feasible type the solver
//! builds a pairing graph on the outside vertices plus one pad vertex per
//! single-contact clique, fills a skew matrix with randomly weighted
//! polynomials enumerating the modulator cliques each pair could absorb, and
//! tests whether the Pfaffian times the interior-clique polynomials keeps a
//! nonzero coefficient on the full modulator monomial.
//!
//! Answers are one-sided: a nonzero coefficient certifies a cover (yes is
//! always correct), while a yes-instance slips through one trial with
//! probability at most `n / 2^61`, amplified by independent repeats.

use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::field::FieldElement;
use crate::graph::Graph;
use crate::pfaffian::{pfaffian, SkewMatrix};
use crate::rng::Rng;
use crate::witness::{coloring_from_cover, CliqueCover, Coloring};
use crate::{Error, Result, SubsetPoly};

/// Largest admissible modulator; one coefficient vector is 2^p field elements.
pub const MAX_MODULATOR: usize = crate::ring::MAX_VARS;

/// Ceiling on `dim^2 * 2^p` coefficients held by one pairing matrix (~1 GiB).
const MATRIX_BUDGET_COEFFS: u64 = 1 << 27;

/// A clique-cover instance together with its modulator.
#[derive(Clone, Debug)]
pub struct ModulatorInstance {
    /// Cover-side graph.
    pub graph: Graph,
    /// Vertices whose removal leaves the graph triangle-free.
    pub modulator: Vec<usize>,
    /// Maximum admissible cover size; values below 1 are answered "no"
    /// (for nonempty graphs) without touching the algebra.
    pub target: i64,
}

/// True iff `g` minus `s` contains no triangle (exhaustive triple scan).
pub fn check_modulator(g: &Graph, s: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    for &v in s {
        if v < n {
            alive[v] = false;
        }
    }
    crate::solver::has_triangle(g, &alive).is_none()
}

pub(crate) fn has_triangle(g: &Graph, alive: &[bool]) -> Option<[usize; 3]> {
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

/// How a cover's cliques meet the outside part: `inside` cliques avoid it,
/// `one_out` touch one outside vertex, `two_out` touch two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverType {
    pub inside: usize,
    pub one_out: usize,
    pub two_out: usize,
}

impl CoverType {
    pub fn size(&self) -> usize {
        self.inside + self.one_out + self.two_out
    }
}

/// All cover types feasible for `n_outside` outside vertices and the target:
/// `one_out` must match the parity of `n_outside` (the rest pairs up), and
/// `inside + (one_out + n_outside)/2`, the cover size, may not exceed the
/// target. The list is ordered by ascending `one_out`, then `inside`.
pub fn enumerate_valid_types(n_outside: usize, target: i64) -> Vec<CoverType> {
    let mut types = Vec::new();
    if target < 0 {
        return types;
    }
    for one_out in (n_outside % 2..=n_outside).step_by(2) {
        let two_out = (n_outside - one_out) / 2;
        let base = (one_out + two_out) as i64;
        for inside in 0..=(target - base).max(-1) {
            if inside < 0 {
                break;
            }
            types.push(CoverType {
                inside: inside as usize,
                one_out,
                two_out,
            });
        }
    }
    types
}

/// Precomputed clique structure of the modulator.
///
/// Subsets of the modulator are bitmasks over `members` (sorted ascending);
/// `is_clique` is filled by the max-vertex recurrence, and `nbhd` maps every
/// host vertex to the bitmask of its modulator neighbors.
pub struct CliqueTable {
    pub members: Vec<usize>,
    pub within_adj: Vec<u32>,
    pub is_clique: Vec<bool>,
    nbhd: Vec<u32>,
}

impl CliqueTable {
    pub fn vars(&self) -> usize {
        self.members.len()
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.members.len()) - 1) as u32
    }

    /// Bitmask of `N(v)` intersected with the modulator.
    pub fn neighborhood_mask(&self, v: usize) -> u32 {
        self.nbhd[v]
    }

    pub fn nonempty_clique_count(&self) -> usize {
        self.is_clique.iter().skip(1).filter(|&&c| c).count()
    }
}

/// Scans all `2^p` subsets of `s`, marking cliques: a set is a clique iff it
/// stays one after dropping its largest member, which must see all the rest.
pub fn build_clique_table(g: &Graph, s: &[usize]) -> Result<CliqueTable> {
    let mut members: Vec<usize> = s.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::Invalid(format!(
            "modulator vertex {bad} out of range"
        )));
    }
    let p = members.len();
    if p > MAX_MODULATOR {
        return Err(Error::Guard(format!(
            "modulator of {p} vertices exceeds the limit of {MAX_MODULATOR}"
        )));
    }
    let within_adj: Vec<u32> = members
        .iter()
        .map(|&u| {
            let mut mask = 0u32;
            for (j, &v) in members.iter().enumerate() {
                if g.has_edge(u, v) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    let mut is_clique = vec![false; 1 << p];
    is_clique[0] = true;
    for t in 1usize..(1 << p) {
        let top = usize::BITS as usize - 1 - t.leading_zeros() as usize;
        let rest = t & !(1 << top);
        is_clique[t] = is_clique[rest] && (within_adj[top] as usize & rest) == rest;
    }
    let nbhd: Vec<u32> = (0..g.vertex_count())
        .map(|v| {
            let mut mask = 0u32;
            for (j, &u) in members.iter().enumerate() {
                if g.has_edge(v, u) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    Ok(CliqueTable {
        members,
        within_adj,
        is_clique,
        nbhd,
    })
}

/// Polynomial attached to a pairing edge: one fresh random weight per clique
/// of the modulator contained in `restriction`, the empty clique included
/// (a cover clique touching the outside may use no modulator vertex at all).
pub fn build_edge_polynomial(table: &CliqueTable, restriction: u32, rng: &mut Rng) -> SubsetPoly {
    let mut poly = SubsetPoly::zero(table.vars());
    let mut t = restriction;
    loop {
        if table.is_clique[t as usize] {
            poly.set_coefficient(t, FieldElement::sample_uniform(rng));
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & restriction;
    }
    poly
}

/// Polynomial enumerating cliques that stay inside the modulator: one fresh
/// random weight per nonempty clique (a cover never contains an empty clique).
pub fn build_interior_polynomial(table: &CliqueTable, rng: &mut Rng) -> SubsetPoly {
    let mut poly = SubsetPoly::zero(table.vars());
    for t in 1u32..(1 << table.vars()) as u32 {
        if table.is_clique[t as usize] {
            poly.set_coefficient(t, FieldElement::sample_uniform(rng));
        }
    }
    poly
}

/// Pairing graph for one cover type: the outside vertices (ascending host
/// order) followed by `pads` fresh vertices adjacent to all of them. Perfect
/// matchings of this graph encode how a cover's cliques meet the outside part.
pub struct AuxGraph {
    pub outside: Vec<usize>,
    pub pads: usize,
}

impl AuxGraph {
    pub fn vertex_count(&self) -> usize {
        self.outside.len() + self.pads
    }

    /// Adjacency in the pairing graph; indices follow the fixed vertex order.
    pub fn is_edge(&self, host: &Graph, a: usize, b: usize) -> bool {
        let out = self.outside.len();
        match (a < out, b < out) {
            (true, true) => host.has_edge(self.outside[a], self.outside[b]),
            (false, false) => false,
            _ => true,
        }
    }
}

/// Which path of the solve produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// A greedy packing (or matching) certified the answer outright.
    Packing,
    /// The randomized algebraic solver decided.
    Algebraic,
    /// A degenerate guard decided without any work.
    Trivial,
}

/// Attached solution witness, when one exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Cover(CliqueCover),
    Coloring(Coloring),
}

/// Outcome of a solver run, with enough provenance to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub decision: bool,
    pub branch: Branch,
    pub witness: Option<Witness>,
    pub seed: u64,
    pub repeats: u32,
    /// Number of (type, repeat) evaluations performed by the algebraic branch.
    pub types_tried: usize,
    pub packing_size: Option<usize>,
    pub modulator_size: Option<usize>,
    pub elapsed_ms: f64,
}

impl SolveReport {
    /// Equality modulo the elapsed-time field.
    pub fn same_outcome(&self, other: &SolveReport) -> bool {
        self.decision == other.decision
            && self.branch == other.branch
            && self.witness == other.witness
            && self.seed == other.seed
            && self.repeats == other.repeats
            && self.types_tried == other.types_tried
            && self.packing_size == other.packing_size
            && self.modulator_size == other.modulator_size
    }

    fn new(seed: u64, repeats: u32, started: Instant) -> Self {
        SolveReport {
            decision: false,
            branch: Branch::Trivial,
            witness: None,
            seed,
            repeats,
            types_tried: 0,
            packing_size: None,
            modulator_size: None,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Decides whether the instance graph has a clique cover of at most
/// `inst.target` cliques, given the triangle-free modulator.
///
/// Trials run per (repeat, type) with child seeds derived from `seed`; the
/// first nonzero coefficient ends the search (a yes is certain once seen).
pub fn solve_clique_cover_with_modulator(
    inst: &ModulatorInstance,
    seed: u64,
    repeats: u32,
) -> Result<SolveReport> {
    let started = Instant::now();
    let g = &inst.graph;
    let n = g.vertex_count();

    let table = build_clique_table(g, &inst.modulator)?;
    if !check_modulator(g, &table.members) {
        return Err(Error::Invalid(
            "graph minus modulator still contains a triangle".into(),
        ));
    }
    let p = table.vars();

    let mut report = SolveReport::new(seed, repeats, started);
    report.modulator_size = Some(p);

    // Degenerate targets: n singletons always cover; no cover has size <= 0.
    if inst.target >= n as i64 {
        report.decision = true;
        report.witness = Some(Witness::Cover(CliqueCover {
            cliques: (0..n).map(|v| vec![v]).collect(),
        }));
        report.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }
    if inst.target <= 0 && n > 0 {
        report.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }

    let outside: Vec<usize> = (0..n).filter(|v| !table.members.contains(v)).collect();
    let outside_masks: Vec<u32> = outside
        .iter()
        .map(|&v| table.neighborhood_mask(v))
        .collect();
    let types = enumerate_valid_types(outside.len(), inst.target);

    report.branch = Branch::Algebraic;
    for repeat in 0..repeats {
        for (ti, ty) in types.iter().enumerate() {
            report.types_tried += 1;
            // More interior cliques than modulator vertices cannot all be
            // nonempty and disjoint; the polynomial vanishes identically.
            if ty.inside > p {
                continue;
            }
            let mut rng = Rng::derive(seed, repeat as u64, ti as u64);
            if evaluate_type(g, &table, &outside, &outside_masks, ty, &mut rng)? {
                report.decision = true;
                report.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
                return Ok(report);
            }
        }
    }
    report.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn evaluate_type(
    g: &Graph,
    table: &CliqueTable,
    outside: &[usize],
    outside_masks: &[u32],
    ty: &CoverType,
    rng: &mut Rng,
) -> Result<bool> {
    let p = table.vars();
    let aux = AuxGraph {
        outside: outside.to_vec(),
        pads: ty.one_out,
    };
    let dim = aux.vertex_count();
    debug_assert!(dim % 2 == 0, "pairing graph must have even order");

    let budget = (dim as u64).pow(2).saturating_mul(1u64 << p);
    if budget > MATRIX_BUDGET_COEFFS {
        return Err(Error::Guard(format!(
            "pairing matrix needs {budget} coefficients (budget {MATRIX_BUDGET_COEFFS})"
        )));
    }

    let out = outside.len();
    let mut mat = SkewMatrix::zeros(dim, SubsetPoly::zero(p));
    for a in 0..dim {
        for b in (a + 1)..dim {
            if !aux.is_edge(g, a, b) {
                continue;
            }
            let restriction = if b < out {
                outside_masks[a] & outside_masks[b]
            } else if a < out {
                outside_masks[a]
            } else {
                unreachable!("pad-pad pairs are never edges")
            };
            mat.set_pair(a, b, build_edge_polynomial(table, restriction, rng));
        }
    }

    let mut f = pfaffian(&mat)?;
    for _ in 0..ty.inside {
        if f.is_zero() {
            break;
        }
        f = &f * &build_interior_polynomial(table, rng);
    }
    Ok(!f.coefficient_at(table.full_mask()).is_zero())
}

/// Decides whether `g` is `target`-colorable, given a modulator whose removal
/// leaves the complement triangle-free. Delegates to the cover solver on the
/// complement and translates any witness back to a coloring.
pub fn solve_coloring_with_modulator(
    g: &Graph,
    modulator: &[usize],
    target: i64,
    seed: u64,
    repeats: u32,
) -> Result<SolveReport> {
    let inst = ModulatorInstance {
        graph: g.complement(),
        modulator: modulator.to_vec(),
        target,
    };
    let mut report = solve_clique_cover_with_modulator(&inst, seed, repeats)?;
    report.witness = match report.witness.take() {
        Some(Witness::Cover(cover)) => Some(Witness::Coloring(coloring_from_cover(g, &cover)?)),
        other => other,
    };
    Ok(report)
}
