//! Error types shared by the exact-arithmetic substrate.

use thiserror::Error;

/// Errors from the base algebra layer (fields, polynomials, rational
/// functions, matrices).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// The object does not survive reduction modulo p.
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    /// Inverse of a matrix with zero determinant.
    #[error("matrix is singular")]
    SingularMatrix,
    /// Series expansion at a pole of the function.
    #[error("pole at the origin")]
    PoleAtOrigin,
    /// A claimed prime failed the primality check.
    #[error("{0} is not prime")]
    NotPrime(u64),
}
