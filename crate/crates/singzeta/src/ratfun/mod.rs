//! Exact rational-function arithmetic in the variables U, T1, ..., Td.
//!
//! Denominators are restricted to the closed factor set {U, U-1, U-Ti}; every
//! identity in the zeta assembly stays inside it, so no general multivariate
//! gcd is needed. Divisibility by a factor is decided by synthetic division.
//! All coefficients are exact: integers before a U-substitution, rationals
//! after.

mod multipoly;
mod unirat;
mod zetarat;

pub use multipoly::{Factor, MultiPoly};
pub use unirat::{UniPoly, UniRatFun};
pub use zetarat::ZetaRatFun;

/// Failure modes of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatFunError {
    /// Synthetic division left a nonzero remainder.
    #[error("polynomial is not divisible by {factor}")]
    NotDivisible { factor: String },
    /// A (U-1) factor survives in the denominator at U = 1.
    #[error("pole at U = 1: a (U-1) denominator factor did not cancel")]
    PoleAtOne,
    /// Substituting U = 0 with a positive U-power in the denominator.
    #[error("division by zero: U = 0 with a positive U-power in the denominator")]
    DivisionByZero,
    /// Power-series expansion needs a unit constant term downstairs.
    #[error("not expandable: denominator constant term is zero")]
    NotExpandable,
}
