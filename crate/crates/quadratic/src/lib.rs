//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.
//!
//! The crate provides [`QuadNumber`] (values `p + q*sqrt(d)` with rational
//! `p`, `q`), continued-fraction expansion of quadratic irrationals, and the
//! period-group machinery used to decide integrability of twisted
//! algebroids `TM x R` over products of spheres: the rank of a finitely
//! generated subgroup of the reals, its discreteness, and exact membership.

mod cf;
mod lattice;
mod number;
mod period;

pub use cf::{convergents, partial_quotients, Convergent, Convergents, PartialQuotients};
pub use lattice::solve_integer_combination;
pub use number::{parse_rational, QuadField, QuadNumber};
pub use period::{
    equivalence_twisted, integrability_verdict, is_discrete, period_group, Discreteness,
    PeriodGroup, TwistedPathData, TwistedSpec, Verdict, Witness,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("d = {0} is not a square-free integer greater than 1")]
    NotSquareFree(i64),
    #[error("mixed radicands sqrt({0}) and sqrt({1})")]
    RadicandMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),
    #[error("a period group needs at least one sphere factor")]
    NoFactors,
    #[error("wrap vector has length {got}, expected {expected}")]
    WrapLength { expected: usize, got: usize },
    #[error("continued fractions need an irrational argument")]
    Rational,
}
