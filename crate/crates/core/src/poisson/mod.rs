//! Poisson structures on coordinate rings.
//!
//! A [`BracketTable`] fixes `{x_i, x_j}` for every pair of coordinates; the
//! bracket of arbitrary rational expressions follows from the Leibniz rule.
//! On top of that this module checks the Jacobi identity, builds product
//! structures, verifies that coordinate maps are Poisson (symbolically or at
//! exact random points), and recovers log-canonical coefficient matrices.

mod extract;
mod json;
mod map;
mod table;

use thiserror::Error;

use crate::exactalg::AlgError;

pub use extract::{extract_log_canonical, NotLogCanonical};
pub use json::{table_from_json, table_to_json, BracketEntryJson, BracketTableJson};
pub use map::{poisson_map_check, CheckMode, CoordinateMap, MapOutcome, MapViolation, Residual};
pub use table::{jacobi_check, product_structure, BracketTable, JacobiViolation, LogCanonicalStructure};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("coefficient matrix is not skew-symmetric")]
    NotSkew,
    #[error("symbolic map check cannot honour a constraint polynomial; use sampled mode")]
    SymbolicWithConstraint,
    #[error("constraint is not linear in any variable")]
    NoSolvableVariable,
    #[error("could not generate a valid sample point after {attempts} attempts")]
    PointGeneration { attempts: usize },
}
