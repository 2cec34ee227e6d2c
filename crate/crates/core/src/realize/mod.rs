//! Brute-force realizability of degree-2 ideals over small finite fields.
//!
//! A zero-dimensional ideal `J` of colength 2 acts on `K[x^±]/J ≅ K²` by
//! commuting invertible matrices `X_i`, and `x^u − c ∈ J` exactly when
//! `X^u = cI`. So the tropicalization is the degree-2 ideal of the
//! scalar-power lattice, and a search over matrix tuples is a search over
//! colength-2 ideals.

mod field;
mod matrix;
mod search;

pub use field::{Elem, FieldError, FiniteField};
pub use matrix::{Matrix2, MatrixRep, RepError};
pub use search::{
    check_quadratic_gap, conjugacy_class_reps, prop46_experiment, search_degree2_realization, search_with_options,
    Expected, Prop46Report, SearchOptions, SearchReport, TargetRun, MAX_VARS, PROP46_FIELDS,
};

use crate::ideal::IdealError;
use crate::lattice::LatticeError;

#[derive(Debug, thiserror::Error)]
pub enum RealizeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("search supports at most {MAX_VARS} variables, got {0}")]
    TooManyVariables(usize),
    #[error("field of order {q} is too large for {n} variables (limit {limit})")]
    FieldTooLarge { q: usize, n: usize, limit: usize },
    #[error("target lattice {0} is not of full rank; finite-field witnesses always give full-rank lattices")]
    NotFullRank(String),
    #[error("quadratic x^2 + a x + b needs nonzero coefficients in the field (got a={a}, b={b})")]
    ZeroCoefficient { a: Elem, b: Elem },
    #[error("candidate limit {limit} exceeded")]
    CandidateLimit { limit: u64 },
}
