//! Exact-arithmetic toolkit for prime-scan experiments in arithmetic
//! differential algebra and lattice slope theory.
//!
//! The crate provides:
//! - exact rationals, dense polynomials, reduced rational functions, and
//!   matrices over them, over Q and over prime fields ([`field`], [`poly`],
//!   [`ratfunc`], [`matrix`]);
//! - the iterated-derivative recursion and p-curvature scans for linear
//!   differential systems `Y' = A(z) Y`, with the mod-p fundamental matrix
//!   ([`pcurvature`]);
//! - Cartier-operator classification of rational differential forms mod p
//!   ([`diffforms`]);
//! - Euclidean-lattice degree/slope arithmetic, short-vector enumeration and
//!   the Siegel-lemma solver ([`lattice`]);
//! - power-series invariants, Eisenstein denominator analysis and
//!   Hermite-Pade detection of algebraic relations ([`series`]);
//! - prime scans for splitting densities, elliptic point counts and Hasse
//!   invariants ([`arith`]);
//! - the `arithlab` command-line front end ([`cli`]).

pub mod arith;
pub mod cli;
pub mod diffforms;
pub mod error;
pub mod lattice;
pub mod numeric;
pub mod pcurvature;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use error::AlgebraError;
pub use field::{BigRat, Field, PrimeField, Rationals};
pub use matrix::Mat;
pub use poly::Poly;
pub use ratfunc::{RatFunc, RatFuncField};

/// Entry point used by the `arithlab` binary; returns the process exit code.
pub fn run_cli() -> i32 {
    cli::run_cli()
}
