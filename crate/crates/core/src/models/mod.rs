//! Geometric realizations of seeds: polygon triangulations with Plücker
//! coordinates, and minors on the unipotent group.

mod plucker;
mod polygon;
mod unipotent;

pub use plucker::{plucker_check, plucker_minor, random_plucker_sample, PluckerReport};
pub use polygon::{all_triangulations, Triangulation};
pub use unipotent::{
    jacobi_product, nontrivial_minors, total_positivity_oracle, total_positivity_test, unipotent_initial_seed,
    MinorIndex, UnipotentSeed,
};

use thiserror::Error;

use crate::seeds::SeedError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("{}{} is not a diagonal of the triangulation", .0 .0, .0 .1)]
    NotADiagonal((usize, usize)),
    #[error("parameter {value} outside the supported range {range}")]
    OutOfRange { value: usize, range: &'static str },
    #[error("sample: {0}")]
    Sample(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
}
