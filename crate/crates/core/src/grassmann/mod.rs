//! The open cell `G⁰_k(n)` of the Grassmannian in the chart `[1_k | Y]`.
//!
//! Plücker coordinates are polynomials in the `k × m` entries `y_ij`
//! (`m = n − k`, `x_[k] = 1`). On top of that sit the initial seed read from
//! the grid quiver, the standard and S-deformed Poisson brackets, the torus
//! action and the checks tying them to the cluster structure.

mod bracket;
mod chart;
mod theorem;

use thiserror::Error;

use crate::cluster::ClusterError;
use crate::exactalg::AlgError;
use crate::poisson::PoissonError;
use crate::rmatrix::RMatrixError;

pub use bracket::{gr_bracket_table, torus_action_map, verify_torus_action_gr};
pub use chart::{index_set, GrassmannChart, GridQuiver};
pub use theorem::{
    tau_grassmann, verify_h_invariance, verify_main_theorem, Completeness, ForwardSample, HViolation,
    MainTheoremReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrassmannError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
    #[error("invalid chart: {0}")]
    BadChart(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("empty cluster: G_{k}({n}) has no mutable variables")]
    EmptyCluster { k: usize, n: usize },
}
