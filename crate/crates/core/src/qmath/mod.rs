//! Dense complex linear algebra and entropies for small Hermitian matrices.

mod eigen;
mod info;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use info::{
    binary_entropy, entropy_of_spectrum, hadamard_product, partial_trace, trace_distance,
    von_neumann_entropy, Subsystem,
};
pub use matrix::ComplexMatrix;
pub use state::DensityMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QMathError {
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NonHermitianInput(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("argument {0} outside the domain")]
    DomainError(f64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}

pub type Result<T> = std::result::Result<T, QMathError>;
