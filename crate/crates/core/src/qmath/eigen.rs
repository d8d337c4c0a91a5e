use crate::scalar::{cr, Complex, Real};
use num_traits::Zero;

use super::{ComplexMatrix, QMathError, Result};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix: `m = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<R: Real> {
    /// Eigenvalues in descending order.
    pub values: Vec<R>,
    /// Unitary whose k-th column is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix<R>,
}

impl<R: Real> HermitianEigen<R> {
    pub fn vector(&self, k: usize) -> Vec<Complex<R>> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues<R: Real>(m: &ComplexMatrix<R>) -> Result<Vec<R>> {
    jacobi(m, false).map(|e| e.values)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen<R: Real>(m: &ComplexMatrix<R>) -> Result<HermitianEigen<R>> {
    jacobi(m, true)
}

fn jacobi<R: Real>(m: &ComplexMatrix<R>, want_vectors: bool) -> Result<HermitianEigen<R>> {
    let n = m.dim();
    let scale = m.max_abs().max(R::one());
    let defect = m.hermiticity_defect();
    if !(defect <= R::tol(1e-10) * scale) {
        return Err(QMathError::NonHermitianInput(defect.as_f64()));
    }
    // symmetrise so that rounding in the input cannot bias the result
    let mut a = ComplexMatrix::from_fn(n, |i, j| {
        let half = R::lit(0.5);
        (m[(i, j)] + m[(j, i)].conj()) * cr(half)
    });
    let mut v = if want_vectors { Some(ComplexMatrix::identity(n)) } else { None };

    let eps = R::epsilon();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: R = off_diagonal_norm(&a);
        let diag: R = (0..n).map(|i| a[(i, i)].re * a[(i, i)].re).sum::<R>().sqrt();
        if off <= eps * eps * diag.max(R::min_positive_value()) || off == R::zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        let diag: R = (0..n).map(|i| a[(i, i)].norm()).fold(R::zero(), R::max);
        if !(off <= R::tol(1e-12) * diag.max(R::one())) {
            return Err(QMathError::NoConvergence);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = match v {
        Some(v) => ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]),
        None => ComplexMatrix::zeros(n),
    };
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<R: Real>(a: &ComplexMatrix<R>) -> R {
    let n = a.dim();
    let mut s = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate<R: Real>(a: &mut ComplexMatrix<R>, v: Option<&mut ComplexMatrix<R>>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == R::zero() {
        return;
    }
    let n = a.dim();
    // phase that makes the pivot real, then a real symmetric rotation
    let phase = apq.conj() / cr(mag);
    let theta = (a[(q, q)].re - a[(p, p)].re) / (R::lit(2.0) * mag);
    let t = if theta == R::zero() {
        R::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + R::one()).sqrt())
    };
    let cs = R::one() / (t * t + R::one()).sqrt();
    let sn = t * cs;

    // U restricted to (p,q): [[c, s], [-s·φ, c·φ]]
    let u_pp = cr(cs);
    let u_pq = cr(sn);
    let u_qp = phase * cr(-sn);
    let u_qq = phase * cr(cs);

    // A <- A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A <- U† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = cr(a[(p, p)].re);
    a[(q, q)] = cr(a[(q, q)].re);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * u_pp + vkq * u_qp;
            v[(k, q)] = vkp * u_pq + vkq * u_qq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn m(rows: &[&[f64]]) -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn identity_spectrum() {
        assert_eq!(hermitian_eigenvalues(&ComplexMatrix::<f64>::identity(2)).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let e = hermitian_eigenvalues(&m(&[&[0.25, 0.0], &[0.0, 0.75]])).unwrap();
        assert_eq!(e, vec![0.75, 0.25]);
    }

    #[test]
    fn rank_one_projector() {
        // characteristic polynomial λ² − λ = 0
        let e = hermitian_eigenvalues(&m(&[&[0.5, 0.5], &[0.5, 0.5]])).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-15 && e[1].abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let r = hermitian_eigenvalues(&m(&[&[1.0, 2.0], &[0.0, 1.0]]));
        assert!(matches!(r, Err(QMathError::NonHermitianInput(_))));
    }

    #[test]
    fn complex_decomposition_reconstructs() {
        let a = ComplexMatrix::from_row_major(vec![
            c(2.0, 0.0), c(0.3, 0.4), c(0.0, -1.0), c(0.1, 0.0),
            c(0.3, -0.4), c(1.0, 0.0), c(0.5, 0.5), c(0.0, 0.2),
            c(0.0, 1.0), c(0.5, -0.5), c(-1.0, 0.0), c(0.7, 0.0),
            c(0.1, 0.0), c(0.0, -0.2), c(0.7, 0.0), c(0.3, 0.0),
        ])
        .unwrap();
        let e = hermitian_eigen(&a).unwrap();
        let lam = ComplexMatrix::diagonal(&e.values.iter().map(|&x| cr(x)).collect::<Vec<_>>());
        let back = &(&e.vectors * &lam) * &e.vectors.adjoint();
        assert!(back.max_abs_diff(&a) < 1e-13);
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-13);
        let tr: f64 = e.values.iter().sum();
        assert!((tr - 2.3).abs() < 1e-13);
    }

    #[test]
    fn works_in_single_precision() {
        let e = hermitian_eigenvalues(&ComplexMatrix::<f32>::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap()).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-6);
    }
}
