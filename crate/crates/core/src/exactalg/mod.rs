//! Exact arithmetic kernel.
//!
//! Everything downstream is built from four value types:
//!
//! - [`Rational`]: arbitrary-precision reduced fractions,
//! - [`LaurentPoly`]: sparse multivariate Laurent polynomials with rational
//!   coefficients (dense exponent vector per term),
//! - [`RatExpr`]: unreduced quotients of Laurent polynomials, compared by
//!   cross-multiplication,
//! - [`Matrix`]: dense row-major matrices over `i64` ([`IntMatrix`]) or
//!   [`Rational`] ([`RatMatrix`]).
//!
//! No multivariate GCD is computed anywhere. All values are immutable once
//! built and are `Send + Sync`.

mod error;
mod json;
mod matrix;
mod poly;
mod rational;
mod ratexpr;
mod vars;

pub use error::AlgError;
pub use json::{
    poly_from_json, poly_to_json, ratexpr_from_json, ratexpr_to_json, PolyJson, RatExprJson, TermJson,
};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use poly::{LaurentPoly, Monomial};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use ratexpr::RatExpr;
pub use vars::VarTable;
