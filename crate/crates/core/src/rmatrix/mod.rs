//! Classical R-matrices on `sl_n` and the Sklyanin brackets they induce.
//!
//! `R_S = R₀ + S π₀` where `R₀ = π₊ − π₋` and `S` is a skew operator on
//! traceless diagonal matrices, stored as its completed `n × n` matrix.

mod lemma;
mod operator;
mod skew;
mod sklyanin;

use thiserror::Error;

use crate::exactalg::AlgError;
use crate::poisson::PoissonError;

pub(crate) use lemma::permutations;
pub use lemma::{factorization_map, verify_factorization_lemma};
pub use operator::{mcybe_check, Coefficient, sl_basis, McybeFailure, McybeViolation, RMatrix};
pub use skew::{complete_skew, SkewParam, SkewParamJson};
pub use sklyanin::{entry_vars, sklyanin_entry_table, sklyanin_functional_bracket, torus_core_table, torus_table};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RMatrixError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("core matrix is not skew-symmetric")]
    NotSkew,
    #[error("size mismatch: {0}")]
    Size(String),
}
