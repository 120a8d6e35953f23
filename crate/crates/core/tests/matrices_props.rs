//! Invariants of the dense linear-algebra substrate.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projdist::matrices::{
    apply_scalar_function, hermitian_eigendecomposition, operator_norm, orthonormal_null_basis, singular_values,
};
use projdist::oracle::random_unitary;
use projdist::{Complex64, ComplexMatrix, Tolerances};

fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gaussian(n, n, &mut rng).hermitian_part()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigendecomposition_reconstructs(n in 1usize..=64, seed in any::<u64>()) {
        let a = random_hermitian(n, seed);
        let es = hermitian_eigendecomposition(&a, &Tolerances::default()).unwrap();
        let scale = operator_norm(&a);
        prop_assert!(operator_norm(&(&a - &es.reconstruct())) <= 1e-10 * scale);
        prop_assert!(es.vectors.orthonormality_defect() <= 1e-10);
        prop_assert!(es.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn eigendecomposition_with_repeated_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = random_unitary(40, &mut rng);
    let values: Vec<f64> = (0..40).map(|i| [-1.0, 0.25, 0.25, 1.0][i % 4]).collect();
    let a = (&(&w * &ComplexMatrix::diag_real(&values)) * &w.adjoint()).hermitian_part();
    let es = hermitian_eigendecomposition(&a, &Tolerances::default()).unwrap();
    assert!(operator_norm(&(&a - &es.reconstruct())) <= 1e-12);
    let clusters = es.clusters(1e-8);
    assert_eq!(clusters.iter().map(|r| r.len()).collect::<Vec<_>>(), vec![10, 20, 10]);
}

#[test]
fn operator_norm_is_adjoint_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let rows = rng.random_range(1..=12);
        let cols = rng.random_range(1..=12);
        let a = gaussian(rows, cols, &mut rng);
        let (n1, n2) = (operator_norm(&a), operator_norm(&a.adjoint()));
        assert!((n1 - n2).abs() <= 1e-12 * n1.max(1.0), "{n1} vs {n2}");
        // Frobenius and max-column bounds bracket the spectral norm.
        assert!(n1 <= a.frobenius_norm() * (1.0 + 1e-12));
    }
}

#[test]
fn hermitian_norm_is_largest_eigenvalue_magnitude() {
    let a = random_hermitian(9, 77);
    let es = hermitian_eigendecomposition(&a, &Tolerances::default()).unwrap();
    let largest = es.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    assert!((operator_norm(&a) - largest).abs() < 1e-13);
    assert!((singular_values(&a)[0] - largest).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(rows in 1usize..=16, cols in 1usize..=16, rank in 0usize..=16, seed in any::<u64>()) {
        let rank = rank.min(rows).min(cols);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &gaussian(rows, rank, &mut rng) * &gaussian(rank, cols, &mut rng);
        let basis = orthonormal_null_basis(&a, &Tolerances::default()).unwrap();
        prop_assert_eq!(basis.cols() + rank, cols);
        prop_assert!(basis.orthonormality_defect() <= 1e-12);
        prop_assert!(operator_norm(&(&a * &basis)) <= 1e-10 * operator_norm(&a).max(1e-300) * rows.max(cols) as f64);
    }

    #[test]
    fn functional_calculus_composes(n in 1usize..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_unitary(n, &mut rng);
        let levels = [-0.9, -0.4, 0.0, 0.3, 0.8];
        let values: Vec<f64> = (0..n).map(|_| levels[rng.random_range(0..levels.len())]).collect();
        let a = (&(&w * &ComplexMatrix::diag_real(&values)) * &w.adjoint()).hermitian_part();
        let tol = Tolerances::default();
        let es = hermitian_eigendecomposition(&a, &tol).unwrap();
        let f = |t: f64| t * t;
        let g = |t: f64| (2.0 * t).cos();
        let table = |h: &dyn Fn(f64) -> f64, pts: &[f64]| -> Vec<Complex64> {
            pts.iter().map(|&t| Complex64::new(h(t), 0.0)).collect()
        };
        let points = es.distinct_values(tol.cluster);
        let fa = apply_scalar_function(&es, &table(&f, &points), tol.cluster).unwrap();
        let gfa_direct = apply_scalar_function(&es, &table(&|t| g(f(t)), &points), tol.cluster).unwrap();
        let es_f = hermitian_eigendecomposition(&fa, &tol).unwrap();
        let gfa = apply_scalar_function(&es_f, &table(&g, &es_f.distinct_values(tol.cluster)), tol.cluster).unwrap();
        prop_assert!(operator_norm(&(&gfa - &gfa_direct)) <= 1e-10);
    }
}
