//! Distance from `e` to the feasible projections, the minimizers that attain
//! it and the older `½b + 4b²` estimate for comparison.
//!
//! With `b = ‖eue‖`:
//!
//! - if the range of `e` meets an eigenspace of `u`, every feasible `q` is at
//!   distance exactly 1 (and `b = 1`);
//! - otherwise `d = √((1 − √(1 − b²)) / 2)`, attained at `χ ≡ 1`, `ω ≡ 1`.

use crate::error::{Error, Result};
use crate::family::{build_family_element, AssembledResiduals, FamilyElement};
use crate::halmos::{canonical_decomposition, validate_involution, validate_projection, BlockDims, CanonicalForm};
use crate::matrices::{hermitian_eigendecomposition, operator_norm, Complex64, ComplexMatrix};
use crate::settings::Tolerances;

/// Upper limit on `‖eue‖` for the `½b + 4b²` estimate to apply.
pub const WALTERS_XI: f64 = 0.455;

/// Agreement required between `‖eue‖` and `max |2t − 1|` over the spectrum.
pub const NORM_IDENTITY_TOL: f64 = 1e-10;

const RANGE_SLACK: f64 = 1e-12;

/// Positive root of `8x² + x − 2`, where `½b + 4b²` reaches 1.
pub fn walters_useful_limit() -> f64 {
    (-1.0 + 65f64.sqrt()) / 16.0
}

/// `max_t |2t − 1|` over the spectrum of `H` (0 for an empty spectrum).
pub fn spectral_eue_norm(cf: &CanonicalForm) -> f64 {
    cf.h_spectrum
        .iter()
        .map(|d| (2.0 * d.value - 1.0).abs())
        .fold(0.0, f64::max)
}

/// `‖eue‖`. When a Case 2 canonical form is supplied, the value is checked
/// against `max_t |2t − 1|`.
pub fn eue_norm(e: &ComplexMatrix, u: &ComplexMatrix, cf: Option<&CanonicalForm>, tol: &Tolerances) -> Result<f64> {
    if e.rows() != u.rows() {
        return Err(Error::DimensionMismatch(format!("e has {} rows, u has {}", e.rows(), u.rows())));
    }
    validate_projection(e, tol)?;
    validate_involution(u, tol)?;
    let b = operator_norm(&(&(e * u) * e));
    if let Some(cf) = cf.filter(|cf| !cf.is_case_one()) {
        let spectral = spectral_eue_norm(cf);
        if (b - spectral).abs() > NORM_IDENTITY_TOL {
            return Err(Error::Mismatch(format!("‖eue‖ = {b} but max |2t-1| = {spectral}")));
        }
    }
    Ok(b)
}

/// `1` in Case 1, otherwise `√((1 − √(1 − b²)) / 2)`.
pub fn distance_formula(b: f64, case_one: bool) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&b) {
        return Err(Error::OutOfRange {
            value: b,
            range: "[0, 1]",
        });
    }
    if case_one {
        return Ok(1.0);
    }
    let b = b.clamp(0.0, 1.0);
    Ok((0.5 * (1.0 - (1.0 - b * b).sqrt())).sqrt())
}

/// `½b + 4b²` for `b < ξ ≈ 0.455`, `None` outside that range.
pub fn walters_bound(b: f64) -> Option<f64> {
    (b < WALTERS_XI).then_some(0.5 * b + 4.0 * b * b)
}

/// Minimizer `q₀ = 0 ⊕ 0 ⊕ 0 ⊕ 0 ⊕ ½[[I, I], [I, I]]` from the canonical form.
pub fn minimizer_canonical(cf: &CanonicalForm) -> Result<ComplexMatrix> {
    if cf.is_case_one() {
        return Err(Error::CaseOne);
    }
    build_family_element(cf, &FamilyElement::optimal(cf.h_spectrum.len()))
}

/// Minimizer built from `e` and `ueu*` alone: with `z = (e − ueu*)/2`,
/// `q₀ = ½(S + z (z²)^(−1/2))` where `S` is the support projector of `z²`
/// and the inverse square root is taken on that support. When `ker e` meets
/// no eigenspace of `u`, `S = I`.
pub fn minimizer_cstar(e: &ComplexMatrix, u: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let b = eue_norm(e, u, None, tol)?;
    if b >= 1.0 - tol.boundary_margin {
        return Err(Error::NormTooLarge { norm: b });
    }
    let n = e.rows();
    let z = (e - &(&(u * e) * &u.adjoint())).scale_real(0.5);
    let z2 = (&z * &z).hermitian_part();
    let es = hermitian_eigendecomposition(&z2, tol)?;
    // Eigenvalues of z² are 0 (on ker e ∩ H±) or t(1 − t) ≥ (1 − b²)/4.
    let cutoff = tol.rank * n as f64 * operator_norm(&z2).max(1.0);
    let support: Vec<usize> = (0..n).filter(|&i| es.eigenvalues[i] > cutoff).collect();
    let v = es.vectors.select_columns(&support);
    let inv_sqrt: Vec<Complex64> = support
        .iter()
        .map(|&i| Complex64::new(es.eigenvalues[i].powf(-0.5), 0.0))
        .collect();
    let inv_root = &v.scale_columns(&inv_sqrt) * &v.adjoint();
    let s = v.range_projector();
    Ok((&s + &(&z * &inv_root)).scale_real(0.5).hermitian_part())
}

/// Everything known about one `(e, u)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub b: f64,
    pub case_one: bool,
    pub d: f64,
    pub dims: BlockDims,
    /// Distinct eigenvalues of `H` with multiplicities.
    pub spectrum: Vec<(f64, usize)>,
    /// Canonical-route minimizer; `None` in Case 1, where every feasible
    /// projection (e.g. `q = 0`) attains `d = 1` and no minimizer is singled out.
    pub q0: Option<ComplexMatrix>,
    /// C*-algebra-route minimizer, when `b < 1 − boundary_margin`.
    pub q0_cstar: Option<ComplexMatrix>,
    /// `max(‖q² − q‖, ‖q − q†‖)` for `q₀` (for the witness `q = 0` in Case 1).
    pub residual_projection: f64,
    /// `‖q u q‖`.
    pub residual_orthogonality: f64,
    /// `|‖e − q‖ − d|`.
    pub residual_distance: f64,
    /// `‖q₀(canonical) − q₀(C*)‖`.
    pub route_gap: Option<f64>,
    /// `|b − max |2t − 1||` in Case 2.
    pub norm_identity_gap: Option<f64>,
}

impl DistanceReport {
    /// The projection attaining `d`: `q₀` in Case 2, the zero witness in Case 1.
    pub fn attaining(&self) -> ComplexMatrix {
        self.q0.clone().unwrap_or_else(|| {
            let n = self.dims.total();
            ComplexMatrix::zeros(n, n)
        })
    }
}

/// Decomposition, case detection, `b`, `d`, both minimizers and residuals.
pub fn full_report(e: &ComplexMatrix, u: &ComplexMatrix, tol: &Tolerances) -> Result<DistanceReport> {
    let cf = canonical_decomposition(e, u, tol)?;
    report_from_canonical(e, u, &cf, tol)
}

/// [`full_report`] for a pair whose canonical form is already known.
pub fn report_from_canonical(
    e: &ComplexMatrix,
    u: &ComplexMatrix,
    cf: &CanonicalForm,
    tol: &Tolerances,
) -> Result<DistanceReport> {
    let b = eue_norm(e, u, Some(cf), tol)?;
    let case_one = cf.is_case_one();
    let d = distance_formula(b.min(1.0), case_one)?;
    let spectrum = cf.h_spectrum.iter().map(|s| (s.value, s.multiplicity)).collect();

    let (q0, q0_cstar, route_gap, norm_identity_gap) = if case_one {
        (None, None, None, None)
    } else {
        let q0 = minimizer_canonical(cf)?;
        let cstar = if b < 1.0 - tol.boundary_margin {
            Some(minimizer_cstar(e, u, tol)?)
        } else {
            None
        };
        let gap = cstar.as_ref().map(|c| operator_norm(&(&q0 - c)));
        let identity_gap = (b - spectral_eue_norm(cf)).abs();
        (Some(q0), cstar, gap, Some(identity_gap))
    };

    let n = e.rows();
    let witness = q0.clone().unwrap_or_else(|| ComplexMatrix::zeros(n, n));
    let residuals = AssembledResiduals::of(&witness, u);
    let residual_distance = (operator_norm(&(e - &witness)) - d).abs();

    Ok(DistanceReport {
        b,
        case_one,
        d,
        dims: cf.dims(),
        spectrum,
        q0,
        q0_cstar,
        residual_projection: residuals.projection(),
        residual_orthogonality: residuals.orthogonality,
        residual_distance,
        route_gap,
        norm_identity_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn two_by_two(t: f64) -> (ComplexMatrix, ComplexMatrix) {
        let s = (t * (1.0 - t)).sqrt();
        (
            ComplexMatrix::from_real_rows(&[&[t, s], &[s, 1.0 - t]]),
            ComplexMatrix::diag_real(&[1.0, -1.0]),
        )
    }

    fn diagonal_pair() -> (ComplexMatrix, ComplexMatrix) {
        (
            ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]),
            ComplexMatrix::diag_real(&[1.0, 1.0, -1.0]),
        )
    }

    #[test]
    fn eue_norm_examples() {
        let (e, u) = two_by_two(0.8);
        let cf = canonical_decomposition(&e, &u, &tol()).unwrap();
        assert_abs_diff_eq!(eue_norm(&e, &u, Some(&cf), &tol()).unwrap(), 0.6, epsilon = 1e-14);
        let (e, u) = two_by_two(0.5);
        assert_abs_diff_eq!(eue_norm(&e, &u, None, &tol()).unwrap(), 0.0, epsilon = 1e-15);
        let (e, u) = diagonal_pair();
        assert_eq!(eue_norm(&e, &u, None, &tol()).unwrap(), 1.0);
    }

    #[test]
    fn formula_examples() {
        assert_abs_diff_eq!(distance_formula(0.6, false).unwrap(), 0.1f64.sqrt(), epsilon = 1e-15);
        assert_eq!(distance_formula(0.0, false).unwrap(), 0.0);
        assert_eq!(distance_formula(1.0, true).unwrap(), 1.0);
        assert_abs_diff_eq!(distance_formula(1.0, false).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert!(matches!(distance_formula(1.1, false), Err(Error::OutOfRange { .. })));
        assert!(matches!(distance_formula(-0.1, false), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn walters_examples() {
        assert_abs_diff_eq!(walters_bound(0.2).unwrap(), 0.26, epsilon = 1e-15);
        assert_eq!(walters_bound(0.0), Some(0.0));
        assert_eq!(walters_bound(0.5), None);
        assert_eq!(walters_bound(WALTERS_XI), None);
        let x = walters_useful_limit();
        assert_abs_diff_eq!(8.0 * x * x + x - 2.0, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn canonical_minimizer() {
        let (e, u) = two_by_two(0.8);
        let cf = canonical_decomposition(&e, &u, &tol()).unwrap();
        let q0 = minimizer_canonical(&cf).unwrap();
        let half = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!((&q0 - &half).max_abs() < 1e-14);
        assert_abs_diff_eq!(operator_norm(&(&e - &q0)), 0.1f64.sqrt(), epsilon = 1e-14);

        let (e, u) = two_by_two(0.5);
        let cf = canonical_decomposition(&e, &u, &tol()).unwrap();
        let q0 = minimizer_canonical(&cf).unwrap();
        assert!((&q0 - &e).max_abs() < 1e-14);

        let (e, u) = diagonal_pair();
        let cf = canonical_decomposition(&e, &u, &tol()).unwrap();
        assert_eq!(minimizer_canonical(&cf), Err(Error::CaseOne));
    }

    #[test]
    fn cstar_minimizer_hand_values() {
        let (e, u) = two_by_two(0.8);
        let z = (&e - &(&(&u * &e) * &u)).scale_real(0.5);
        let expected_z = ComplexMatrix::from_real_rows(&[&[0.0, 0.4], &[0.4, 0.0]]);
        assert!((&z - &expected_z).max_abs() < 1e-15);
        let q0 = minimizer_cstar(&e, &u, &tol()).unwrap();
        let half = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!((&q0 - &half).max_abs() < 1e-14);

        let (e, u) = two_by_two(0.5);
        let q0 = minimizer_cstar(&e, &u, &tol()).unwrap();
        assert!((&q0 - &e).max_abs() < 1e-14);
    }

    #[test]
    fn cstar_minimizer_refuses_large_norm() {
        let (e, u) = diagonal_pair();
        assert!(matches!(minimizer_cstar(&e, &u, &tol()), Err(Error::NormTooLarge { .. })));
    }

    #[test]
    fn cstar_minimizer_vanishes_on_kernel_intersections() {
        // e ⊕ 0 with the extra coordinate in ker e ∩ H+.
        let s = (0.8f64 * 0.2).sqrt();
        let e = ComplexMatrix::from_real_rows(&[&[0.8, s, 0.0], &[s, 0.2, 0.0], &[0.0, 0.0, 0.0]]);
        let u = ComplexMatrix::diag_real(&[1.0, -1.0, 1.0]);
        let q0 = minimizer_cstar(&e, &u, &tol()).unwrap();
        let cf = canonical_decomposition(&e, &u, &tol()).unwrap();
        assert_eq!(cf.dims().m01, 1);
        assert!((&q0 - &minimizer_canonical(&cf).unwrap()).max_abs() < 1e-12);
        assert!(q0[(2, 2)].norm() < 1e-14);
    }

    #[test]
    fn full_report_examples() {
        let (e, u) = diagonal_pair();
        let r = full_report(&e, &u, &tol()).unwrap();
        assert!(r.case_one);
        assert_eq!((r.b, r.d), (1.0, 1.0));
        assert!(r.q0.is_none());
        assert_eq!(r.residual_distance, 0.0);

        let (e, u) = two_by_two(0.8);
        let r = full_report(&e, &u, &tol()).unwrap();
        assert!(!r.case_one);
        assert_abs_diff_eq!(r.b, 0.6, epsilon = 1e-14);
        assert_abs_diff_eq!(r.d, 0.1f64.sqrt(), epsilon = 1e-14);
        let half = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!((&r.q0.clone().unwrap() - &half).max_abs() < 1e-14);
        assert!(r.route_gap.unwrap() < 1e-12);
        assert!(r.residual_distance < 1e-14);

        let zero = ComplexMatrix::zeros(2, 2);
        let r = full_report(&zero, &u, &tol()).unwrap();
        assert!(!r.case_one);
        assert_eq!(r.d, 0.0);
        assert_eq!(r.q0.unwrap().max_abs(), 0.0);
    }
}
