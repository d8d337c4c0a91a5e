use crate::scalar::{Complex, Real};
use num_traits::Zero;

use super::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix, QMathError, Result};

/// Which tensor factor of a two-qubit state to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// `H2(p)` in bits. Inputs within 1e-12 of `[0, 1]` are clamped.
pub fn binary_entropy<R: Real>(p: R) -> Result<R> {
    let slack = R::tol(1e-12);
    if !(p >= -slack && p <= R::one() + slack) {
        return Err(QMathError::DomainError(p.as_f64()));
    }
    let p = p.max(R::zero()).min(R::one());
    Ok(plogp(p) + plogp(R::one() - p))
}

#[inline]
fn plogp<R: Real>(p: R) -> R {
    if p <= R::zero() {
        R::zero()
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy in bits of a (numerical) spectrum; small negative
/// eigenvalues down to -1e-10 are treated as zero.
pub fn entropy_of_spectrum<R: Real>(spectrum: &[R]) -> Result<R> {
    let floor = -R::tol(1e-10);
    let mut s = R::zero();
    for &l in spectrum {
        if l < floor {
            return Err(QMathError::InvalidState(format!("negative eigenvalue {l:e}")));
        }
        s += plogp(l.max(R::zero()));
    }
    Ok(s.max(R::zero()))
}

pub fn von_neumann_entropy<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    if rho.dim() == 1 {
        return Ok(R::zero());
    }
    let spec = hermitian_eigenvalues(rho.matrix())
        .map_err(|e| QMathError::InvalidState(e.to_string()))?;
    let tr: R = spec.iter().copied().sum();
    if !((tr - R::one()).abs() <= R::tol(1e-9)) {
        return Err(QMathError::InvalidState(format!("trace {tr}")));
    }
    entropy_of_spectrum(&spec)
}

/// `½ Σ|λ_i(ρ1 − ρ2)|`.
pub fn trace_distance<R: Real>(a: &DensityMatrix<R>, b: &DensityMatrix<R>) -> Result<R> {
    a.matrix().check_same_dim(b.matrix())?;
    let diff = a.matrix() - b.matrix();
    let spec = hermitian_eigenvalues(&diff)?;
    let sum: R = spec.iter().map(|l| l.abs()).sum();
    Ok((sum * R::lit(0.5)).min(R::one()))
}

/// Reduced state of a two-qubit density matrix.
pub fn partial_trace<R: Real>(rho: &DensityMatrix<R>, keep: Subsystem) -> Result<DensityMatrix<R>> {
    if rho.dim() != 4 {
        return Err(QMathError::DimensionMismatch { left: rho.dim(), right: 4 });
    }
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(2, |i, j| {
        let mut acc = Complex::zero();
        for k in 0..2 {
            acc += match keep {
                Subsystem::First => m[(2 * i + k, 2 * j + k)],
                Subsystem::Second => m[(2 * k + i, 2 * k + j)],
            };
        }
        acc
    });
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Entrywise (Schur) product.
pub fn hadamard_product<R: Real>(a: &ComplexMatrix<R>, b: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    a.check_same_dim(b)?;
    Ok(a.map(|i, j, z| z * b[(i, j)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c, cr};

    fn dm(rows: &[&[f64]]) -> DensityMatrix<f64> {
        DensityMatrix::new(ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // −0.9 log2 0.9 − 0.1 log2 0.1
        let h = -0.9 * 0.9f64.log2() - 0.1 * 0.1f64.log2();
        assert!((binary_entropy(0.9).unwrap() - h).abs() < 1e-15);
        assert!((h - 0.468996).abs() < 1e-6);
        assert!(binary_entropy(-1e-13).is_ok());
        assert!(matches!(binary_entropy(1.1), Err(QMathError::DomainError(_))));
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&DensityMatrix::<f64>::basis(2, 0)).unwrap().abs() < 1e-15);
        assert!((von_neumann_entropy(&DensityMatrix::<f64>::maximally_mixed(2)).unwrap() - 1.0).abs() < 1e-15);
        let s = von_neumann_entropy(&dm(&[&[0.9, 0.0], &[0.0, 0.1]])).unwrap();
        assert!((s - binary_entropy(0.9).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn trace_distance_examples() {
        let z0 = DensityMatrix::<f64>::basis(2, 0);
        let z1 = DensityMatrix::<f64>::basis(2, 1);
        assert!(trace_distance(&z0, &z0).unwrap().abs() < 1e-15);
        assert!((trace_distance(&z0, &z1).unwrap() - 1.0).abs() < 1e-15);
        // dephased |±⟩ differ by ±e^{−Γ}/2 off the diagonal
        let k = (-1.3f64).exp();
        let p = dm(&[&[0.5, 0.5 * k], &[0.5 * k, 0.5]]);
        let m = dm(&[&[0.5, -0.5 * k], &[-0.5 * k, 0.5]]);
        assert!((trace_distance(&p, &m).unwrap() - k).abs() < 1e-14);
        assert!(trace_distance(&z0, &DensityMatrix::maximally_mixed(4)).is_err());
    }

    #[test]
    fn partial_trace_examples() {
        let a = dm(&[&[0.7, 0.1], &[0.1, 0.3]]);
        let b = dm(&[&[0.2, 0.0], &[0.0, 0.8]]);
        let ab = a.tensor(&b);
        assert!(partial_trace(&ab, Subsystem::First).unwrap().matrix().max_abs_diff(a.matrix()) < 1e-15);
        assert!(partial_trace(&ab, Subsystem::Second).unwrap().matrix().max_abs_diff(b.matrix()) < 1e-15);

        let s = 0.5f64.sqrt();
        let bell = DensityMatrix::pure(&[cr(s), cr(0.0), cr(0.0), cr(s)]).unwrap();
        let red = partial_trace(&bell, Subsystem::First).unwrap();
        assert!(red.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);

        // index sums: keep second → (ρ00 + ρ22, ρ11 + ρ33)
        let d = DensityMatrix::<f64>::diagonal(&[0.4, 0.1, 0.3, 0.2]).unwrap();
        let r = partial_trace(&d, Subsystem::Second).unwrap();
        assert!((r.matrix()[(0, 0)].re - 0.7).abs() < 1e-15);
        assert!((r.matrix()[(1, 1)].re - 0.3).abs() < 1e-15);
        assert!(partial_trace(&a, Subsystem::First).is_err());
    }

    #[test]
    fn hadamard_examples() {
        let a = ComplexMatrix::<f64>::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let b = ComplexMatrix::<f64>::from_real_rows(&[&[5.0, 6.0], &[7.0, 8.0]]).unwrap();
        let ones = ComplexMatrix::<f64>::from_fn(2, |_, _| c(1.0, 0.0));
        let want = ComplexMatrix::<f64>::from_real_rows(&[&[5.0, 12.0], &[21.0, 32.0]]).unwrap();
        assert_eq!(hadamard_product(&a, &b).unwrap(), want);
        assert_eq!(hadamard_product(&a, &ones).unwrap(), a);
        assert_eq!(hadamard_product(&a, &ComplexMatrix::zeros(2)).unwrap(), ComplexMatrix::zeros(2));
        assert!(hadamard_product(&a, &ComplexMatrix::zeros(4)).is_err());
    }
}
