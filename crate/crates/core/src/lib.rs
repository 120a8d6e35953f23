//! Distance from an orthogonal projection `e` to the projections `q` in the
//! von Neumann algebra generated by `e` and a hermitian involution `u` that
//! satisfy `q u q = 0`.
//!
//! The crate is organised bottom-up:
//!
//! - [`matrices`]: dense complex matrices, a cyclic Jacobi hermitian
//!   eigensolver, one-sided Jacobi singular values, null-space bases and
//!   the spectral functional calculus.
//! - [`halmos`]: the six-summand canonical decomposition of the pair
//!   `(e, (u + I)/2)` and its inverse.
//! - [`family`]: the feasible projections, parametrised by a support bit
//!   and a phase per distinct spectral point, and scalar validators for the
//!   idempotence and orthogonality systems.
//! - [`distance`]: the closed-form distance, both minimizer constructions
//!   and the comparison bound.
//! - [`oracle`]: brute-force enumeration, seeded random instances and the
//!   3x3 example where the unconstrained distance is smaller.
//! - [`matrix_file`] and [`cli`]: the JSON matrix format and the
//!   `report` / `curve` / `gen` command line.
//!
//! ```
//! use projdist::{distance::full_report, matrices::ComplexMatrix, Tolerances};
//!
//! let e = ComplexMatrix::from_real_rows(&[&[0.8, 0.4], &[0.4, 0.2]]);
//! let u = ComplexMatrix::diag_real(&[1.0, -1.0]);
//! let report = full_report(&e, &u, &Tolerances::default()).unwrap();
//! assert!(!report.case_one);
//! assert!((report.b - 0.6).abs() < 1e-12);
//! assert!((report.d - 0.1f64.sqrt()).abs() < 1e-12);
//! ```

pub mod cli;
pub mod distance;
pub mod error;
pub mod family;
pub mod halmos;
pub mod matrices;
pub mod matrix_file;
pub mod oracle;
pub mod settings;

pub use error::{Error, Result};
pub use matrices::{Complex64, ComplexMatrix, EigenSystem};
pub use settings::Tolerances;
