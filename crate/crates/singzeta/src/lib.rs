//! Exact zeta functions of curve singularities via value semigroups.
//!
//! The crate computes the universal zeta function of a good value semigroup
//! in the variables U, T1, ..., Td, together with its monodromy (U = 1),
//! counting (U = q), and motivic (symbolic U) specializations, an
//! independent brute-force oracle over small finite fields, and the global
//! Euler-product factorization for singular rational curves. All arithmetic
//! is exact.

pub mod global;
pub mod io;
pub mod oracle;
pub mod ratfun;
pub mod semigroup;
pub mod universal;

pub use global::{
    assemble_global, divisor_series_oracle, p1_closed_point_counts, GlobalError,
    SingularCurveModel, SingularPoint, SmoothCurveZeta,
};
pub use io::{load_path, parse_input, Input, IoError};
pub use oracle::{
    algebra_closure_basis, collect_small_values, count_principal_ideals, h_dim_oracle,
    semigroup_from_model, value_vector, AlgebraBasis, OracleError, PrimeField, RingModel,
    TruncVec,
};
pub use ratfun::{Factor, MultiPoly, RatFunError, UniPoly, UniRatFun, ZetaRatFun};
pub use semigroup::{GoodSemigroup, SemigroupError, ValueVec, Violation};
pub use universal::{
    assemble_universal, boundary_anchor, boundary_members, counting_ca, generalized_poincare,
    ideal_class_poly, specialize_counting, specialize_monodromy, ULaurent, UniversalZeta,
};
