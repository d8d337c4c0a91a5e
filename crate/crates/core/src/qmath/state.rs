use crate::scalar::{cr, Complex, Real};
use num_traits::One;


use super::{hermitian_eigenvalues, ComplexMatrix, QMathError, Result};

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<R: Real> {
    matrix: ComplexMatrix<R>,
}

impl<R: Real> DensityMatrix<R> {
    /// Validates the state invariants (Hermiticity, unit trace, PSD).
    pub fn new(matrix: ComplexMatrix<R>) -> Result<Self> {
        let herm = matrix.hermiticity_defect();
        if !(herm <= R::tol(1e-12)) {
            return Err(QMathError::InvalidState(format!("hermiticity defect {herm:e}")));
        }
        let tr = matrix.trace();
        if !((tr - Complex::one()).norm() <= R::tol(1e-12)) {
            return Err(QMathError::InvalidState(format!("trace {tr}")));
        }
        let spec = hermitian_eigenvalues(&matrix)?;
        let min = spec.last().copied().unwrap_or_else(R::zero);
        if !(min >= -R::tol(1e-10)) {
            return Err(QMathError::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix the caller knows to be a state (e.g. an exact channel output).
    pub fn from_matrix_unchecked(matrix: ComplexMatrix<R>) -> Self {
        Self { matrix }
    }

    /// `|ψ⟩⟨ψ|` for a ket that is normalised here.
    pub fn pure(ket: &[Complex<R>]) -> Result<Self> {
        let norm: R = ket.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt();
        if !(norm > R::zero()) {
            return Err(QMathError::InvalidState("zero ket".into()));
        }
        let k: Vec<_> = ket.iter().map(|z| *z / cr(norm)).collect();
        Ok(Self { matrix: ComplexMatrix::outer(&k, &k) })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = R::one() / R::from_usize(dim).unwrap();
        Self { matrix: ComplexMatrix::identity(dim).scale_real(w) }
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probs: &[R]) -> Result<Self> {
        let d: Vec<_> = probs.iter().map(|&p| cr(p)).collect();
        Self::new(ComplexMatrix::diagonal(&d))
    }

    /// Computational basis projector `|k⟩⟨k|`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        m[(k, k)] = Complex::one();
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<R> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<R> {
        self.matrix
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.matrix.clone()).map(|_| ())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self { matrix: self.matrix.kron(&other.matrix) }
    }

    pub fn populations(&self) -> Vec<R> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> R {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_diagonal(&self, tol: R) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)].norm() <= tol))
    }

}
