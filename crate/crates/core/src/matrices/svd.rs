//! Singular values by one-sided (Hestenes) Jacobi, the operator norm and
//! numerical null spaces.
//!
//! One-sided Jacobi works on `A` directly instead of `A† A`, so small
//! singular values keep absolute accuracy of order `ε‖A‖`. Rank decisions
//! at `1e-10 * max(rows, cols) * ‖A‖` depend on that.

use super::eigen::{jacobi_rotation, rotate_columns};
use super::{hermitian_eigendecomposition, ComplexMatrix, ZERO};
use crate::error::{Error, Result};
use crate::settings::Tolerances;

/// Right singular system of `a`: `a · v` has mutually orthogonal columns
/// whose norms are the singular values (in column order, unsorted).
struct RightSingular {
    sigma: Vec<f64>,
    v: ComplexMatrix,
    converged: bool,
}

fn one_sided_jacobi(a: &ComplexMatrix, max_sweeps: usize) -> RightSingular {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = f64::EPSILON * (m.max(1) as f64);
    // Columns at rounding level are numerically zero; their mutual
    // orthogonality is noise and must not keep the sweep alive.
    let floor = (eps * a.frobenius_norm()).powi(2);
    let mut converged = n < 2;

    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for k in 0..m {
                    let wp = w[(k, p)];
                    let wq = w[(k, q)];
                    alpha += wp.norm_sqr();
                    beta += wq.norm_sqr();
                    gamma += wp.conj() * wq;
                }
                let g = gamma.norm();
                if g <= floor || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, sp, _) = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, c, sp);
                rotate_columns(&mut v, p, q, c, sp);
            }
        }
        converged = !rotated;
    }

    let sigma = (0..n)
        .map(|c| (0..m).map(|r| w[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    RightSingular { sigma, v, converged }
}

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut sigma = one_sided_jacobi(a, 60).sigma;
    sigma.sort_by(|x, y| y.total_cmp(x));
    sigma
}

/// Largest singular value. Hermitian input (up to rounding) goes through
/// the eigensolver and returns the largest eigenvalue magnitude.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    if a.is_square() && a.hermitian_defect() <= 1e-12 {
        if let Ok(es) = hermitian_eigendecomposition(a, &Tolerances::default()) {
            return es.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs()));
        }
    }
    one_sided_jacobi(a, 60).sigma.into_iter().fold(0.0, f64::max)
}

/// Orthonormal basis (as columns) of the numerical kernel of `a`.
///
/// A right singular vector belongs to the kernel when its singular value is
/// at most `tol.rank * max(rows, cols) * ‖A‖`. The result has `a.cols()`
/// rows and as many columns as the numerical nullity, possibly zero.
pub fn orthonormal_null_basis(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let rs = one_sided_jacobi(a, tol.max_sweeps);
    if !rs.converged {
        return Err(Error::NonConvergence {
            sweeps: tol.max_sweeps,
        });
    }
    let norm = rs.sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = tol.rank * (a.rows().max(a.cols()) as f64) * norm;
    let kernel: Vec<usize> = (0..a.cols()).filter(|&j| rs.sigma[j] <= cutoff).collect();
    Ok(rs.v.select_columns(&kernel))
}


#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn norm_examples() {
        assert_abs_diff_eq!(operator_norm(&ComplexMatrix::identity(5)), 1.0, epsilon = 1e-15);
        let nil = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert_abs_diff_eq!(operator_norm(&nil), 2.0, epsilon = 1e-15);
        let e = ComplexMatrix::from_real_rows(&[&[0.8, 0.4], &[0.4, 0.2]]);
        let u = ComplexMatrix::diag_real(&[1.0, -1.0]);
        let eue = &(&e * &u) * &e;
        assert_abs_diff_eq!(operator_norm(&eue), 0.6, epsilon = 1e-14);
    }

    #[test]
    fn rectangular_norm() {
        // singular values of [[3, 0], [4, 0], [0, 1]] are 5 and 1
        let a = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[4.0, 0.0], &[0.0, 1.0]]);
        assert_abs_diff_eq!(operator_norm(&a), 5.0, epsilon = 1e-14);
        let s = singular_values(&a);
        assert_abs_diff_eq!(s[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn null_basis_examples() {
        let tol = Tolerances::default();
        assert_eq!(orthonormal_null_basis(&ComplexMatrix::identity(3), &tol).unwrap().cols(), 0);

        let z = orthonormal_null_basis(&ComplexMatrix::zeros(3, 3), &tol).unwrap();
        assert_eq!(z.cols(), 3);
        assert!(z.orthonormality_defect() < 1e-15);

        let e = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]);
        let u = ComplexMatrix::diag_real(&[1.0, 1.0, -1.0]);
        let i3 = ComplexMatrix::identity(3);
        let stacked = ComplexMatrix::vstack(&[&(&e - &i3), &(&u - &i3)]);
        let b = orthonormal_null_basis(&stacked, &tol).unwrap();
        assert_eq!(b.cols(), 1);
        assert_abs_diff_eq!(b[(0, 0)].norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn null_basis_of_wide_and_empty_matrices() {
        let tol = Tolerances::default();
        let wide = ComplexMatrix::from_real_rows(&[&[1.0, 1.0, 0.0]]);
        let b = orthonormal_null_basis(&wide, &tol).unwrap();
        assert_eq!(b.cols(), 2);
        assert!((&wide * &b).frobenius_norm() < 1e-15);
        let none = ComplexMatrix::zeros(0, 4);
        assert_eq!(orthonormal_null_basis(&none, &tol).unwrap().cols(), 4);
    }
}
