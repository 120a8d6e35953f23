//! Numerical tolerances shared by every module.

/// Tolerance bundle. Every threshold used by the decomposition, the
/// eigensolvers and the minimizers is read from here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative defect accepted when validating hermitian, idempotent and
    /// involutive inputs, measured in Frobenius norm against `max(1, ‖A‖_F)`.
    pub validation: f64,
    /// Jacobi stops once the off-diagonal Frobenius mass drops below
    /// `jacobi_convergence * ‖A‖_F`.
    pub jacobi_convergence: f64,
    /// Full sweeps allowed before reporting non-convergence.
    pub max_sweeps: usize,
    /// Absolute gap under which two eigenvalues form one spectral cluster.
    pub cluster: f64,
    /// A singular value counts as zero when it is at most
    /// `rank * max(rows, cols) * ‖A‖`.
    pub rank: f64,
    /// The C*-algebra minimizer is refused when `‖eue‖ >= 1 - boundary_margin`.
    pub boundary_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            validation: 1e-9,
            jacobi_convergence: 1e-14,
            max_sweeps: 30,
            cluster: 1e-8,
            rank: 1e-10,
            boundary_margin: 1e-6,
        }
    }
}

impl Tolerances {
    /// Default bundle with the input validation tolerance replaced.
    pub fn with_validation(validation: f64) -> Self {
        Self {
            validation,
            ..Self::default()
        }
    }

    /// Distance from 0 and 1 under which an eigenvalue of the generic part
    /// is treated as degenerate.
    pub fn degenerate_margin(&self) -> f64 {
        10.0 * self.cluster
    }
}
