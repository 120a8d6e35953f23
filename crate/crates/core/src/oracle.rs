//! Independent verification machinery.
//!
//! - [`lambda_eigenvalue`]: closed-form `‖e − q‖` contribution of one
//!   spectral point, next to [`lambda_numeric`], which diagonalises the 2x2
//!   block instead.
//! - [`oracle_distance`]: exhaustive search over every support pattern and
//!   a grid of phases, checked against `‖e − q‖` on assembled matrices.
//! - [`random_instance`]: seeded pairs `(e, u)` with a known canonical form.
//! - [`general_family_3x3`]: the unconstrained feasible projections for
//!   `e = diag(1, 0, 0)`, `u = diag(1, 1, −1)`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{build_family_element, solve_family, AssembledResiduals, FamilyElement};
use crate::halmos::{reconstruct, BlockDims, CanonicalForm, SpectralDatum};
use crate::matrices::{hermitian_eigendecomposition, operator_norm, Complex64, ComplexMatrix};
use crate::settings::Tolerances;

/// Largest number of distinct spectral points the oracle enumerates.
pub const MAX_CLUSTERS: usize = 20;

/// Agreement required between the λ-based minimum and the directly
/// assembled `‖e − q‖`.
pub const DIRECT_CHECK_TOL: f64 = 1e-10;

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: t,
            range: "(0, 1)",
        })
    }
}

/// `e − q` restricted to one spectral point `t`:
/// `[[t − χ/2, √(t(1−t)) − χω/2], [√(t(1−t)) − χω̄/2, 1 − t − χ/2]]`.
pub fn difference_block(t: f64, chi: bool, omega_angle: f64) -> ComplexMatrix {
    let x = if chi { 0.5 } else { 0.0 };
    let s = (t * (1.0 - t)).sqrt();
    let w = Complex64::from_polar(x, omega_angle);
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(t - x, 0.0), Complex64::new(s, 0.0) - w],
        vec![Complex64::new(s, 0.0) - w.conj(), Complex64::new(1.0 - t - x, 0.0)],
    ])
}

/// Closed form of the positive eigenvalue of [`difference_block`]: 1 when
/// `χ = 0`, otherwise `√(½ − √(t(1−t)) cos θ)`.
pub fn lambda_eigenvalue(t: f64, chi: bool, omega_angle: f64) -> Result<f64> {
    check_t(t)?;
    if !chi {
        return Ok(1.0);
    }
    Ok((0.5 - (t * (1.0 - t)).sqrt() * omega_angle.cos()).max(0.0).sqrt())
}

/// Largest eigenvalue magnitude of [`difference_block`], computed by the
/// eigensolver.
pub fn lambda_numeric(t: f64, chi: bool, omega_angle: f64) -> Result<f64> {
    check_t(t)?;
    let es = hermitian_eigendecomposition(&difference_block(t, chi, omega_angle), &Tolerances::default())?;
    Ok(es.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    /// `min over (χ, ω) of max over the spectrum of λ`.
    pub min_value: f64,
    pub argmin: FamilyElement,
    /// `‖e − q‖` for the argmin, on assembled matrices.
    pub direct_value: f64,
    /// Support patterns enumerated.
    pub patterns: u64,
}

/// Brute-force minimum of `‖e − q‖` over the feasible family.
///
/// Every support pattern `χ ∈ {0,1}^k` is enumerated. At each spectral point
/// the phase is searched over `omega_grid` equally spaced angles plus the
/// angle 0. Since `‖e − q‖` is a maximum of per-point terms, each point's
/// phase is minimised separately. Ties go to the lexicographically smallest
/// `χ`, then the smallest angle, so the result is independent of the
/// parallel evaluation order.
pub fn oracle_distance(cf: &CanonicalForm, omega_grid: usize) -> Result<OracleOutcome> {
    if cf.is_case_one() {
        return Err(Error::CaseOne);
    }
    let space = solve_family(cf);
    let k = space.points();
    if k > MAX_CLUSTERS {
        return Err(Error::TooManyClusters {
            clusters: k,
            cap: MAX_CLUSTERS,
        });
    }
    let mut angles = vec![0.0];
    angles.extend((1..omega_grid.max(1)).map(|j| TAU * j as f64 / omega_grid as f64));

    // Per point: (best λ with χ = 1, its angle, λ with χ = 0).
    let per_point: Vec<(f64, f64, f64)> = space
        .points
        .iter()
        .map(|&t| {
            let mut best = (f64::INFINITY, 0.0);
            for &a in &angles {
                let l = lambda_numeric(t, true, a)?;
                if l < best.0 {
                    best = (l, a);
                }
            }
            Ok((best.0, best.1, lambda_numeric(t, false, 0.0)?))
        })
        .collect::<Result<_>>()?;

    let patterns = space.chi_pattern_count().expect("k <= MAX_CLUSTERS");
    let value_of = |index: u64| -> f64 {
        space
            .chi_pattern(index)
            .iter()
            .zip(&per_point)
            .map(|(&chi, p)| if chi { p.0 } else { p.2 })
            .fold(0.0, f64::max)
    };
    let (min_value, best_index) = (0..patterns)
        .into_par_iter()
        .map(|i| (value_of(i), i))
        .reduce(
            || (f64::INFINITY, u64::MAX),
            |a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );

    let chi = space.chi_pattern(best_index);
    let omega = chi
        .iter()
        .zip(&per_point)
        .map(|(&c, p)| if c { p.1 } else { 0.0 })
        .collect();
    let argmin = FamilyElement { chi, omega };

    let (e, _) = reconstruct(cf);
    let q = build_family_element(cf, &argmin)?;
    let direct_value = operator_norm(&(&e - &q));
    if (direct_value - min_value).abs() > DIRECT_CHECK_TOL {
        return Err(Error::Mismatch(format!(
            "oracle minimum {min_value} but assembled ‖e - q‖ = {direct_value}"
        )));
    }
    Ok(OracleOutcome {
        min_value,
        argmin,
        direct_value,
        patterns,
    })
}

/// The rank-one projection `q_{x,y} = ½ v v†` with `v = (x, y, 1)` and its
/// distance to `e = diag(1, 0, 0)`, checked against `√((1 + |y|²)/2)`.
pub fn general_family_3x3(x: Complex64, y: Complex64) -> Result<(ComplexMatrix, f64)> {
    let norm_sq = x.norm_sqr() + y.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let one = Complex64::new(1.0, 0.0);
    let v = [x, y, one];
    let q = ComplexMatrix::from_fn(3, 3, |r, c| v[r] * v[c].conj() * 0.5);
    let e = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]);
    let u = ComplexMatrix::diag_real(&[1.0, 1.0, -1.0]);
    let r = AssembledResiduals::of(&q, &u);
    if !r.feasible(1e-10) {
        return Err(Error::Mismatch(format!("q_(x,y) is not feasible: {r:?}")));
    }
    let dist = operator_norm(&(&e - &q));
    let expected = ((1.0 + y.norm_sqr()) / 2.0).sqrt();
    if (dist - expected).abs() > 1e-10 {
        return Err(Error::Mismatch(format!("‖e - q‖ = {dist}, expected {expected}")));
    }
    Ok((q, dist))
}

/// Ground-truth description of a generated pair.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub dim_m00: usize,
    pub dim_m01: usize,
    pub dim_m10: usize,
    pub dim_m11: usize,
    /// Distinct eigenvalues of `H` in `(0, 1)` with multiplicities.
    pub spectrum: Vec<(f64, usize)>,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(dims: [usize; 4], spectrum: Vec<(f64, usize)>, seed: u64) -> Self {
        Self {
            dim_m00: dims[0],
            dim_m01: dims[1],
            dim_m10: dims[2],
            dim_m11: dims[3],
            spectrum,
            seed,
        }
    }

    pub fn dims(&self) -> BlockDims {
        BlockDims {
            m00: self.dim_m00,
            m01: self.dim_m01,
            m10: self.dim_m10,
            m11: self.dim_m11,
            m: self.spectrum.iter().map(|&(_, k)| k).sum(),
        }
    }

    /// Spectrum sorted ascending.
    pub fn sorted_spectrum(&self) -> Vec<(f64, usize)> {
        let mut s = self.spectrum.clone();
        s.sort_by(|a, b| a.0.total_cmp(&b.0));
        s
    }

    fn validate(&self, tol: &Tolerances) -> Result<()> {
        if self.dims().total() == 0 {
            return Err(Error::BadSpec("all blocks are empty".into()));
        }
        let margin = tol.degenerate_margin();
        let sorted = self.sorted_spectrum();
        for &(t, k) in &sorted {
            if !(t > margin && t < 1.0 - margin) {
                return Err(Error::BadSpec(format!("spectral value {t} not inside (0, 1)")));
            }
            if k == 0 {
                return Err(Error::BadSpec(format!("spectral value {t} has multiplicity 0")));
            }
        }
        if let Some(w) = sorted.windows(2).find(|w| w[1].0 - w[0].0 <= margin) {
            return Err(Error::BadSpec(format!(
                "spectral values {} and {} are not separated",
                w[0].0, w[1].0
            )));
        }
        Ok(())
    }

    /// A random Case 2 specification: no `M00`/`M11`, up to `max_points`
    /// distinct values drawn from `[0.05, 0.95]`, ambient dimension at most
    /// `max_dim`. Deterministic in `seed`.
    pub fn random_case_two(seed: u64, max_dim: usize, max_points: usize) -> Self {
        assert!(max_dim >= 2 && max_points >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
        let points = rng.random_range(1..=max_points.min(max_dim / 2));
        let mut values: Vec<f64> = Vec::new();
        while values.len() < points {
            let t = rng.random_range(0.05..0.95);
            if values.iter().all(|&v: &f64| (v - t).abs() > 0.02) {
                values.push(t);
            }
        }
        let mut budget = max_dim - 2 * points;
        let spectrum = values
            .into_iter()
            .map(|t| {
                let extra = rng.random_range(0..=budget / 2);
                budget -= 2 * extra;
                (t, 1 + extra)
            })
            .collect();
        let m01 = rng.random_range(0..=budget);
        let m10 = rng.random_range(0..=budget - m01);
        Self::new([0, m01, m10, 0], spectrum, seed)
    }
}

/// A generated pair with its canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub e: ComplexMatrix,
    pub u: ComplexMatrix,
    pub ground_truth: CanonicalForm,
}

/// Haar-distributed unitary: Gram-Schmidt (applied twice) on the columns of
/// a seeded complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let mut g = ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        if orthonormalize_columns(&mut g) {
            return g;
        }
    }
}

/// Returns false when a column collapses numerically.
fn orthonormalize_columns(g: &mut ComplexMatrix) -> bool {
    let n = g.rows();
    for c in 0..g.cols() {
        for _ in 0..2 {
            for p in 0..c {
                let proj: Complex64 = (0..n).map(|r| g[(r, p)].conj() * g[(r, c)]).sum();
                for r in 0..n {
                    let v = g[(r, p)];
                    g[(r, c)] -= proj * v;
                }
            }
        }
        let norm = (0..n).map(|r| g[(r, c)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return false;
        }
        for r in 0..n {
            g[(r, c)] /= norm;
        }
    }
    true
}

/// Builds `e = U e_c U†`, `u = U u_c U†` from the canonical blocks of `spec`
/// and a seeded random unitary `U`.
pub fn random_instance(spec: &InstanceSpec, tol: &Tolerances) -> Result<Instance> {
    spec.validate(tol)?;
    let dims = spec.dims();
    let n = dims.total();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let w = random_unitary(n, &mut rng);

    let spectrum = spec.sorted_spectrum();
    let ts: Vec<f64> = spectrum
        .iter()
        .flat_map(|&(t, k)| std::iter::repeat_n(t, k))
        .collect();
    let m = ts.len();
    let offset = n - 2 * m;

    let mut ec = ComplexMatrix::zeros(n, n);
    let mut uc = ComplexMatrix::zeros(n, n);
    let mut i = 0;
    for (len, e_val, u_val) in [
        (dims.m00, 1.0, 1.0),
        (dims.m01, 0.0, 1.0),
        (dims.m10, 0.0, -1.0),
        (dims.m11, 1.0, -1.0),
    ] {
        for _ in 0..len {
            ec[(i, i)] = Complex64::new(e_val, 0.0);
            uc[(i, i)] = Complex64::new(u_val, 0.0);
            i += 1;
        }
    }
    for (j, &t) in ts.iter().enumerate() {
        let (p, q) = (offset + j, offset + m + j);
        let s = (t * (1.0 - t)).sqrt();
        ec[(p, p)] = Complex64::new(t, 0.0);
        ec[(p, q)] = Complex64::new(s, 0.0);
        ec[(q, p)] = Complex64::new(s, 0.0);
        ec[(q, q)] = Complex64::new(1.0 - t, 0.0);
        uc[(p, p)] = Complex64::new(1.0, 0.0);
        uc[(q, q)] = Complex64::new(-1.0, 0.0);
    }
    let wa = w.adjoint();
    let e = (&(&w * &ec) * &wa).hermitian_part();
    let u = (&(&w * &uc) * &wa).hermitian_part();

    let mut start = offset;
    let mut h_spectrum = Vec::new();
    let id_m = ComplexMatrix::identity(m);
    for &(t, k) in &spectrum {
        h_spectrum.push(SpectralDatum {
            value: t,
            multiplicity: k,
            vectors: id_m.columns(start - offset, start - offset + k),
        });
        start += k;
    }
    let mut cuts = [0; 5];
    let mut acc = 0;
    for (slot, len) in [dims.m00, dims.m01, dims.m10, dims.m11].into_iter().enumerate() {
        acc += len;
        cuts[slot + 1] = acc;
    }
    let ground_truth = CanonicalForm {
        basis_m00: w.columns(cuts[0], cuts[1]),
        basis_m01: w.columns(cuts[1], cuts[2]),
        basis_m10: w.columns(cuts[2], cuts[3]),
        basis_m11: w.columns(cuts[3], cuts[4]),
        basis_m_plus: w.columns(offset, offset + m),
        basis_m_minus: w.columns(offset + m, n),
        h_spectrum,
    };
    Ok(Instance { e, u, ground_truth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::eue_norm;
    use crate::halmos::canonical_decomposition;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, PI};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn lambda_examples() {
        assert_abs_diff_eq!(lambda_eigenvalue(0.8, true, 0.0).unwrap(), 0.1f64.sqrt(), epsilon = 1e-15);
        assert_eq!(lambda_eigenvalue(0.37, false, 2.0).unwrap(), 1.0);
        assert_abs_diff_eq!(lambda_eigenvalue(0.5, true, PI).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lambda_numeric(0.5, true, PI).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(lambda_numeric(0.37, false, 2.0).unwrap(), 1.0, epsilon = 1e-14);
        assert!(matches!(lambda_eigenvalue(1.0, true, 0.0), Err(Error::OutOfRange { .. })));
    }

    fn generic_only(values: &[f64], seed: u64) -> Instance {
        let spec = InstanceSpec::new([0; 4], values.iter().map(|&t| (t, 1)).collect(), seed);
        random_instance(&spec, &tol()).unwrap()
    }

    #[test]
    fn oracle_single_point() {
        let inst = generic_only(&[0.8], 3);
        let out = oracle_distance(&inst.ground_truth, 64).unwrap();
        assert_abs_diff_eq!(out.min_value, 0.1f64.sqrt(), epsilon = 1e-12);
        assert_eq!(out.argmin, FamilyElement::optimal(1));
        assert_eq!(out.patterns, 2);
    }

    #[test]
    fn oracle_half_is_exact() {
        let inst = generic_only(&[0.5], 4);
        let out = oracle_distance(&inst.ground_truth, 7).unwrap();
        assert!(out.min_value < 1e-7);
        assert_eq!(out.argmin, FamilyElement::optimal(1));
    }

    #[test]
    fn oracle_symmetric_points() {
        let inst = generic_only(&[0.2, 0.8], 5);
        let out = oracle_distance(&inst.ground_truth, 64).unwrap();
        assert_abs_diff_eq!(out.min_value, 0.1f64.sqrt(), epsilon = 1e-12);
        assert_eq!(out.argmin, FamilyElement::optimal(2));
    }

    #[test]
    fn oracle_rejects_case_one() {
        let spec = InstanceSpec::new([1, 0, 0, 0], vec![(0.4, 1)], 1);
        let inst = random_instance(&spec, &tol()).unwrap();
        assert_eq!(oracle_distance(&inst.ground_truth, 8), Err(Error::CaseOne));
    }

    #[test]
    fn oracle_caps_clusters() {
        let values: Vec<f64> = (1..=21).map(|i| i as f64 / 22.0).collect();
        let cf = CanonicalForm {
            h_spectrum: values
                .iter()
                .map(|&t| SpectralDatum {
                    value: t,
                    multiplicity: 1,
                    vectors: ComplexMatrix::zeros(0, 0),
                })
                .collect(),
            ..generic_only(&[0.5], 1).ground_truth
        };
        assert_eq!(
            oracle_distance(&cf, 4),
            Err(Error::TooManyClusters { clusters: 21, cap: 20 })
        );
    }

    #[test]
    fn three_by_three_family() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_abs_diff_eq!(general_family_3x3(one, zero).unwrap().1, FRAC_1_SQRT_2, epsilon = 1e-14);
        assert_abs_diff_eq!(general_family_3x3(zero, one).unwrap().1, 1.0, epsilon = 1e-14);
        for theta in [0.0, FRAC_PI_3, PI] {
            let (_, d) = general_family_3x3(Complex64::from_polar(1.0, theta), zero).unwrap();
            assert_abs_diff_eq!(d, FRAC_1_SQRT_2, epsilon = 1e-14);
        }
        assert!(matches!(general_family_3x3(one, one), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn one_dimensional_instance() {
        let inst = random_instance(&InstanceSpec::new([1, 0, 0, 0], vec![], 99), &tol()).unwrap();
        assert!((&inst.e - &ComplexMatrix::identity(1)).max_abs() < 1e-15);
        assert!((&inst.u - &ComplexMatrix::identity(1)).max_abs() < 1e-15);
    }

    #[test]
    fn seeded_two_by_two_has_b_point_six() {
        let inst = generic_only(&[0.8], 42);
        assert_abs_diff_eq!(eue_norm(&inst.e, &inst.u, None, &tol()).unwrap(), 0.6, epsilon = 1e-13);
        let again = generic_only(&[0.8], 42);
        assert_eq!(inst, again);
    }

    #[test]
    fn six_by_six_round_trip() {
        let spec = InstanceSpec::new([0, 1, 1, 0], vec![(0.3, 1), (0.7, 1)], 7);
        let inst = random_instance(&spec, &tol()).unwrap();
        assert_eq!(inst.e.rows(), 6);
        let cf = canonical_decomposition(&inst.e, &inst.u, &tol()).unwrap();
        assert_eq!(cf.dims(), spec.dims());
        let values = cf.distinct_values();
        assert_abs_diff_eq!(values[0], 0.3, epsilon = 1e-8);
        assert_abs_diff_eq!(values[1], 0.7, epsilon = 1e-8);
    }

    #[test]
    fn bad_specs() {
        let t = tol();
        assert!(matches!(random_instance(&InstanceSpec::new([0; 4], vec![], 1), &t), Err(Error::BadSpec(_))));
        assert!(matches!(
            random_instance(&InstanceSpec::new([0; 4], vec![(1.0, 1)], 1), &t),
            Err(Error::BadSpec(_))
        ));
        assert!(matches!(
            random_instance(&InstanceSpec::new([0; 4], vec![(0.3, 1), (0.3, 2)], 1), &t),
            Err(Error::BadSpec(_))
        ));
        assert!(matches!(
            random_instance(&InstanceSpec::new([0; 4], vec![(0.3, 0)], 1), &t),
            Err(Error::BadSpec(_))
        ));
    }

    #[test]
    fn random_specs_respect_limits() {
        for seed in 0..50 {
            let spec = InstanceSpec::random_case_two(seed, 12, 3);
            let d = spec.dims();
            assert!(d.total() <= 12 && d.m00 == 0 && d.m11 == 0);
            assert!((1..=3).contains(&spec.spectrum.len()));
        }
    }
}
