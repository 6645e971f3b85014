//! Exact solution spaces of bivariate Horn hypergeometric systems.
//!
//! A Horn system is given by an integer matrix `B` with `n` rows and two
//! columns whose rows sum to zero, together with a parameter vector `c`.
//! The crate computes its holonomic rank combinatorially and through
//! Gröbner bases, finds all Puiseux polynomial solutions, builds truncated
//! Gamma-series for the remaining solutions and verifies every object by
//! exact rational arithmetic.

pub mod error;
pub mod groebner;
pub mod horn;
pub mod job;
pub mod linalg;
pub mod poly;
pub mod puiseux;
pub mod series;
pub mod shift;
pub mod stdpairs;

pub use error::{HornError, Result};
pub use horn::{Convention, HornConfig, HornSystem, Params, RankReport};
pub use linalg::{IntMatrix, Rat};
pub use poly::{Exponent, MonomialOrder, SparsePolynomial};
