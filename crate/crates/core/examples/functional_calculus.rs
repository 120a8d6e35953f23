//! Eigendecomposition, functional calculus and null spaces on a small
//! hermitian matrix.
//!
//! cargo run --example functional_calculus

use projdist::matrices::{
    apply_real_function, hermitian_eigendecomposition, operator_norm, orthonormal_null_basis,
};
use projdist::{ComplexMatrix, Tolerances};

fn main() -> projdist::Result<()> {
    let tol = Tolerances::default();
    let h = ComplexMatrix::from_real_rows(&[&[0.5, 0.3, 0.0], &[0.3, 0.5, 0.0], &[0.0, 0.0, 0.1]]);
    let es = hermitian_eigendecomposition(&h, &tol)?;
    println!("eigenvalues {:?}", es.eigenvalues);
    println!("clusters {:?}", es.clusters(tol.cluster));

    let root = apply_real_function(&es, tol.cluster, f64::sqrt);
    println!("|sqrt(H)^2 - H| = {:.1e}", operator_norm(&(&(&root * &root) - &h)));

    let pair = apply_real_function(&es, tol.cluster, |t| (t * (1.0 - t)).sqrt());
    println!("sqrt(H(I-H)) =\n{pair:?}");

    let singular = ComplexMatrix::from_real_rows(&[&[1.0, 1.0, 0.0], &[2.0, 2.0, 0.0]]);
    let null = orthonormal_null_basis(&singular, &tol)?;
    println!("null space of a rank-1 2x3 matrix has dimension {}", null.cols());
    Ok(())
}
