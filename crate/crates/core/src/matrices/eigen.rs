//! Cyclic Jacobi eigensolver for hermitian matrices and the spectral
//! functional calculus built on top of it.

use std::ops::Range;

use super::{relative, Complex64, ComplexMatrix, ZERO};
use crate::error::{Error, Result};
use crate::settings::Tolerances;

/// Eigenvalues in ascending order with orthonormal eigenvectors as the
/// columns of `vectors`, aligned with `eigenvalues`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Index ranges of distinct spectral points. Consecutive eigenvalues
    /// closer than `cluster_tol` share a range.
    pub fn clusters(&self, cluster_tol: f64) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.eigenvalues.len() {
            if i == self.eigenvalues.len()
                || self.eigenvalues[i] - self.eigenvalues[i - 1] > cluster_tol
            {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    /// Mean eigenvalue of each cluster.
    pub fn distinct_values(&self, cluster_tol: f64) -> Vec<f64> {
        self.clusters(cluster_tol)
            .into_iter()
            .map(|r| {
                let len = r.len() as f64;
                self.eigenvalues[r].iter().sum::<f64>() / len
            })
            .collect()
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let scaled = self.vectors.scale_columns(
            &self
                .eigenvalues
                .iter()
                .map(|&l| Complex64::new(l, 0.0))
                .collect::<Vec<_>>(),
        );
        &scaled * &self.vectors.adjoint()
    }
}

/// Eigendecomposition of a hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input is accepted when `‖A − A†‖_F <= tol.validation * max(1, ‖A‖_F)`
/// and its hermitian part is diagonalised. Iteration stops once the
/// off-diagonal Frobenius mass is at most `tol.jacobi_convergence * ‖A‖_F`;
/// the reconstruction residual `‖A − V diag(λ) V†‖_F` then stays within a
/// small multiple of `n * f64::EPSILON * ‖A‖_F` (checked at `1e-10 * ‖A‖` in
/// the test suite).
pub fn hermitian_eigendecomposition(a: &ComplexMatrix, tol: &Tolerances) -> Result<EigenSystem> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = relative(&(a - &a.adjoint()), a);
    if defect > tol.validation {
        return Err(Error::NotHermitian { defect });
    }

    let n = a.rows();
    let mut w = a.hermitian_part();
    for i in 0..n {
        w[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol.jacobi_convergence * a.frobenius_norm();

    let mut converged = false;
    for sweep in 0..=tol.max_sweeps {
        if off_diagonal_mass(&w) <= threshold {
            converged = true;
            break;
        }
        if sweep == tol.max_sweeps {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = w[(p, p)].re;
                let aqq = w[(q, q)].re;
                // Past the first few sweeps, drop entries below the rounding
                // level of both diagonal entries.
                if sweep > 3 && app.abs() + 100.0 * g == app.abs() && aqq.abs() + 100.0 * g == aqq.abs() {
                    w[(p, q)] = ZERO;
                    w[(q, p)] = ZERO;
                    continue;
                }
                rotate(&mut w, &mut v, p, q, app, aqq, apq);
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            sweeps: tol.max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re).then(i.cmp(&j)));
    Ok(EigenSystem {
        eigenvalues: order.iter().map(|&i| w[(i, i)].re).collect(),
        vectors: v.select_columns(&order),
    })
}

fn off_diagonal_mass(w: &ComplexMatrix) -> f64 {
    let n = w.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += w[(p, q)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Unitary 2x2 rotation in the `(p, q)` plane that zeroes `w[(p, q)]` of the
/// hermitian block `[[app, apq], [conj(apq), aqq]]`. Returns `(c, s·phase)`
/// so that the rotation is `[[c, s·phase], [−conj(s·phase), c]]`.
pub(crate) fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, Complex64, f64) {
    let g = apq.norm();
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, phase * (t * c), t)
}

/// Applies `X <- X G` on columns `p`, `q`.
pub(crate) fn rotate_columns(x: &mut ComplexMatrix, p: usize, q: usize, c: f64, sp: Complex64) {
    let spc = sp.conj();
    for k in 0..x.rows() {
        let xp = x[(k, p)];
        let xq = x[(k, q)];
        x[(k, p)] = xp * c - spc * xq;
        x[(k, q)] = sp * xp + xq * c;
    }
}

fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, app: f64, aqq: f64, apq: Complex64) {
    let (c, sp, t) = jacobi_rotation(app, aqq, apq);
    let g = apq.norm();
    rotate_columns(w, p, q, c, sp);
    // Rows: W <- G† W.
    let spc = sp.conj();
    for k in 0..w.cols() {
        let wp = w[(p, k)];
        let wq = w[(q, k)];
        w[(p, k)] = wp * c - sp * wq;
        w[(q, k)] = spc * wp + wq * c;
    }
    w[(p, q)] = ZERO;
    w[(q, p)] = ZERO;
    w[(p, p)] = Complex64::new(app - t * g, 0.0);
    w[(q, q)] = Complex64::new(aqq + t * g, 0.0);
    rotate_columns(v, p, q, c, sp);
}

/// `Σ f_i P_i`, where `P_i` is the orthogonal projector onto the `i`-th
/// spectral cluster of `eigen` (ascending) and `table[i] = f_i`.
pub fn apply_scalar_function(eigen: &EigenSystem, table: &[Complex64], cluster_tol: f64) -> Result<ComplexMatrix> {
    let clusters = eigen.clusters(cluster_tol);
    if table.len() < clusters.len() {
        return Err(Error::MissingClusterValue {
            expected: clusters.len(),
            got: table.len(),
        });
    }
    if table.len() > clusters.len() {
        return Err(Error::LengthMismatch {
            expected: clusters.len(),
            got: table.len(),
        });
    }
    let mut per_vector = vec![ZERO; eigen.dim()];
    for (range, &value) in clusters.into_iter().zip(table) {
        for slot in &mut per_vector[range] {
            *slot = value;
        }
    }
    let scaled = eigen.vectors.scale_columns(&per_vector);
    Ok(&scaled * &eigen.vectors.adjoint())
}

/// Real-valued convenience wrapper: evaluates `f` at each cluster's mean.
pub fn apply_real_function(eigen: &EigenSystem, cluster_tol: f64, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let table: Vec<Complex64> = eigen
        .distinct_values(cluster_tol)
        .into_iter()
        .map(|t| Complex64::new(f(t), 0.0))
        .collect();
    apply_scalar_function(eigen, &table, cluster_tol).expect("table built from the clusters")
}
