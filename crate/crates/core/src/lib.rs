//! Solvers for graph coloring below trivial guarantees.
//!
//! The library decides questions of the form "can this graph be properly
//! colored with `n - k` colors?" (dual coloring) and the harder
//! "`omega + mu-bar - k` colors?" variant, where `omega` is the clique number
//! and `mu-bar` the maximum matching size of the complement. Both pipelines
//! rest on a win-win analysis of a greedy co-triangle packing: a large packing
//! certifies a yes-instance outright, while a small one yields a modulator
//! that feeds a randomized algebraic clique-cover solver running in
//! `O*(2^p)` time for a modulator of `p` vertices.
//!
//! The algebraic core evaluates a Pfaffian over the squarefree quotient ring
//! `F[y_1..y_p]/(y^2)` with coefficients in GF(2^61 - 1), so that a nonzero
//! coefficient on the full monomial certifies a clique cover. Answers are
//! one-sided: a yes is always correct, and a yes-instance is missed with
//! probability below `(n/2^61)^repeats` per cover type.
//!
//! Module map:
//! - [`graph`], [`matching`], [`witness`]: graph representation, DIMACS I/O,
//!   packings, blossom matching, and verified solution witnesses.
//! - [`field`], [`rng`], [`ring`], [`pfaffian`]: the algebra stack.
//! - [`solver`]: the modulator-parameterized clique-cover/coloring solver.
//! - [`below_guarantee`]: the dual-coloring and structural-guarantee pipelines.
//! - [`oracle`]: brute-force ground truth for cross-validation.
//! - [`reduction`]: the colored-clique hardness-instance generator.
//! - [`generators`], [`bench`]: random instances and the scaling harness.

pub mod below_guarantee;
pub mod bench;
pub mod field;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod pfaffian;
pub mod reduction;
pub mod ring;
pub mod rng;
pub mod solver;
pub mod witness;

use thiserror::Error;

/// Errors surfaced by parsing, guards, and precondition checks.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text (DIMACS, edge lists, flags).
    #[error("parse error: {0}")]
    Parse(String),
    /// A size guard refused the computation.
    #[error("size guard: {0}")]
    Guard(String),
    /// Semantically invalid input (bad modulator, broken witness, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// The working scalar: GF(2^61 - 1).
pub type Coeff = field::FieldElement;
/// Squarefree subset polynomials over the working scalar.
pub type SubsetPoly = ring::RingElement<Coeff>;
/// Skew-symmetric matrices with subset-polynomial entries.
pub type SkewPolyMatrix = pfaffian::SkewMatrix<SubsetPoly>;

pub use graph::Graph;
pub use solver::{ModulatorInstance, SolveReport};
