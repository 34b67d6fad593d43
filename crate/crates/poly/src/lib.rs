//! Exact sparse polynomials in the variables `A, z_1, ..., z_N`.
//!
//! Coefficients are arbitrary-precision integers; every polynomial produced by
//! the loop-model recursions lives in `Z[A, z_1, ..., z_N]`, and evaluation at
//! rational points is exact. The variable-swap `tau_i`, the divided difference
//! `ddiff_i` and `theta_i = -2A ddiff_i - tau_i` use cyclic indices, so `i = N`
//! acts on the pair `(z_N, z_1)`.

mod divide;
mod eval;
mod monomial;
mod operators;
mod poly;
mod serial;

pub use eval::EvalPoint;
pub use monomial::{Monomial, MAX_Z_VARS};
pub use poly::MultiPoly;
pub use serial::TermRecord;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("evaluation point has {got} z-coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed term record: {0}")]
    BadRecord(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;
