pub mod cluster;
pub mod exactalg;
pub mod grassmann;
pub mod poisson;
pub mod rmatrix;
pub mod rng;
