//! Cluster algebras of geometric type with skew-symmetric principal part.
//!
//! Seeds and mutations, the τ-coordinate frame, both compatibility routes
//! (the τ-proportionality criterion and direct log-canonicity checks on
//! mutated clusters), the toric action and the compatible-bracket family.

mod compat;
mod exchange;
mod seed;
mod tau;
mod toric;

use thiserror::Error;

use crate::exactalg::AlgError;
use crate::poisson::PoissonError;

pub use compat::{
    check_compatibility, check_compatibility_direct, check_compatibility_direct_omega,
    compatible_solution_space, compatible_space_dimension, theorem_preconditions, Compatibility,
    DirectOutcome,
};
pub use exchange::ExtendedExchangeMatrix;
pub use seed::Seed;
pub use tau::{build_tau_frame, omega_in_basis, tau_map, TauFrame, DEFAULT_KAPPA_BOUND};
pub use toric::{compatible_family, toric_action_map, toric_action_matrix, tau_weights, FamilyMember};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("mutation direction {k} out of range for {n_c} cluster variables")]
    DirectionOutOfRange { k: usize, n_c: usize },
    #[error("principal part is not skew-symmetric")]
    PrincipalNotSkew,
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("precondition: rank of the exchange matrix is {rank}, expected {n_c}")]
    RankDeficient { rank: usize, n_c: usize },
    #[error("precondition: principal part is reducible (disconnected)")]
    Reducible,
    #[error("precondition: no cluster variables")]
    NoClusterVariables,
    #[error("no nondegenerate kappa with entries in [-{bound}, {bound}]")]
    KappaSearchExhausted { bound: i64 },
    #[error("given kappa makes B_kappa singular")]
    SingularKappa,
    #[error("toric parameter matrix U is singular")]
    SingularU,
    #[error("base bracket is not compatible")]
    IncompatibleBase,
    #[error("coefficient matrix is not skew-symmetric or has the wrong size")]
    BadOmega,
}

impl ClusterError {
    /// True for failures meaning the compatibility criterion does not apply.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            ClusterError::RankDeficient { .. } | ClusterError::Reducible | ClusterError::NoClusterVariables
        )
    }
}
