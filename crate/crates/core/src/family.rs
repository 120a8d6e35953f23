//! Projections `q` in the algebra generated by `e` and `u` with `quq = 0`.
//!
//! An element of the algebra is `a00 I ⊕ a01 I ⊕ a10 I ⊕ a11 I ⊕ Φ(H)` for
//! scalars `a_ij` and a 2x2 table of functions `φ_ij` on the spectrum of
//! `H`. The feasible ones are exactly
//!
//! ```text
//! q = 0 ⊕ 0 ⊕ 0 ⊕ 0 ⊕ ½ [[χ, χω], [χω̄, χ]](H)
//! ```
//!
//! with `χ` a {0,1}-valued and `ω` a unimodular function on the spectrum.

use std::f64::consts::TAU;
use std::fmt;

use crate::error::{Error, Result};
use crate::halmos::{block2, CanonicalForm};
use crate::matrices::{Complex64, ComplexMatrix, ZERO};

/// Tolerance of the scalar condition checks.
pub const CONDITION_TOL: f64 = 1e-10;

/// A point of the feasible family: one support bit and one phase angle per
/// distinct eigenvalue of `H` (ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyElement {
    pub chi: Vec<bool>,
    pub omega: Vec<f64>,
}

impl FamilyElement {
    /// `χ ≡ 1`, `ω ≡ 1`: the nearest feasible projection.
    pub fn optimal(points: usize) -> Self {
        Self {
            chi: vec![true; points],
            omega: vec![0.0; points],
        }
    }

    pub fn zero(points: usize) -> Self {
        Self {
            chi: vec![false; points],
            omega: vec![0.0; points],
        }
    }

    pub fn points(&self) -> usize {
        self.chi.len()
    }

    /// Phase `e^{iθ}` at point `i`, angle reduced to `[0, 2π)`.
    pub fn phase(&self, i: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.omega[i].rem_euclid(TAU))
    }

    /// The scalar/function tables this element induces.
    pub fn wstar(&self) -> WStarElement {
        let phi = (0..self.points())
            .map(|i| {
                let x = if self.chi[i] { 0.5 } else { 0.0 };
                let w = self.phase(i) * x;
                [[Complex64::new(x, 0.0), w], [w.conj(), Complex64::new(x, 0.0)]]
            })
            .collect();
        WStarElement { a: [ZERO; 4], phi }
    }
}

/// `a00 I ⊕ a01 I ⊕ a10 I ⊕ a11 I ⊕ Φ(H)`, with `Φ` sampled at each distinct
/// eigenvalue of `H`. `a` is ordered `[a00, a01, a10, a11]`; `phi[k][i][j]`
/// is `φ_ij` at point `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WStarElement {
    pub a: [Complex64; 4],
    pub phi: Vec<[[Complex64; 2]; 2]>,
}

impl WStarElement {
    /// Single spectral point with real `φ00, φ11` and `φ10 = conj(φ01)`.
    pub fn hermitian_point(phi00: f64, phi11: f64, phi01: Complex64) -> Self {
        Self {
            a: [ZERO; 4],
            phi: vec![[[Complex64::new(phi00, 0.0), phi01], [phi01.conj(), Complex64::new(phi11, 0.0)]]],
        }
    }
}

/// Outcome of a condition check: the largest violation on the four scalar
/// summands and at each spectral point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCheck {
    pub holds: bool,
    pub scalar_residual: f64,
    pub point_residuals: Vec<f64>,
}

impl ConditionCheck {
    fn from_residuals(scalar_residual: f64, point_residuals: Vec<f64>) -> Self {
        let worst = point_residuals.iter().copied().fold(scalar_residual, f64::max);
        Self {
            holds: worst <= CONDITION_TOL,
            scalar_residual,
            point_residuals,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.point_residuals.iter().copied().fold(self.scalar_residual, f64::max)
    }
}

/// Orthogonal projection conditions: `a_ij ∈ {0, 1}`, `φ00`, `φ11` real,
/// `φ10 = conj(φ01)`, `φ00 − φ00² = φ11 − φ11² = |φ01|²` and
/// `(φ00 + φ11 − 1) φ01 = 0`.
pub fn check_projection_conditions(w: &WStarElement) -> ConditionCheck {
    let scalar = w
        .a
        .iter()
        .map(|a| a.norm().min((a - 1.0).norm()))
        .fold(0.0, f64::max);
    let points = w
        .phi
        .iter()
        .map(|[[p00, p01], [p10, p11]]| {
            let modulus = p01.norm_sqr();
            [
                p00.im.abs(),
                p11.im.abs(),
                (p10 - p01.conj()).norm(),
                (p00 - p00 * p00 - modulus).norm(),
                (p11 - p11 * p11 - modulus).norm(),
                ((p00 + p11 - 1.0) * p01).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        })
        .collect();
    ConditionCheck::from_residuals(scalar, points)
}

/// Conditions equivalent to `quq = 0`: on the scalar summands `u = ±I`, so
/// `quq = ±a_ij²` and every `a_ij` must vanish; on the generic part
/// `φ00² = φ11² = φ01 φ10` and `(φ00 − φ11) φ01 = (φ00 − φ11) φ10 = 0`.
pub fn check_orthogonality_conditions(w: &WStarElement) -> ConditionCheck {
    let scalar = w.a.iter().map(|a| (a * a).norm()).fold(0.0, f64::max);
    let points = w
        .phi
        .iter()
        .map(|[[p00, p01], [p10, p11]]| {
            let cross = p01 * p10;
            let diff = p00 - p11;
            [
                (p00 * p00 - cross).norm(),
                (p11 * p11 - cross).norm(),
                (diff * p01).norm(),
                (diff * p10).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        })
        .collect();
    ConditionCheck::from_residuals(scalar, points)
}

fn check_points(cf: &CanonicalForm, got: usize) -> Result<()> {
    let expected = cf.h_spectrum.len();
    if got != expected {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Assembles a general algebra element in the original coordinates.
pub fn assemble_wstar(cf: &CanonicalForm, w: &WStarElement) -> Result<ComplexMatrix> {
    check_points(cf, w.phi.len())?;
    let table = |i: usize, j: usize| -> Vec<Complex64> { w.phi.iter().map(|p| p[i][j]).collect() };
    let block = block2(
        &cf.h_function(&table(0, 0))?,
        &cf.h_function(&table(0, 1))?,
        &cf.h_function(&table(1, 0))?,
        &cf.h_function(&table(1, 1))?,
    );
    let mut q = cf.lift_generic(&block);
    for (basis, a) in [&cf.basis_m00, &cf.basis_m01, &cf.basis_m10, &cf.basis_m11]
        .into_iter()
        .zip(w.a)
    {
        if a != ZERO {
            q = &q + &basis.range_projector().scale(a);
        }
    }
    Ok(q)
}

/// Builds the feasible projection for `fe` in the original coordinates.
pub fn build_family_element(cf: &CanonicalForm, fe: &FamilyElement) -> Result<ComplexMatrix> {
    check_points(cf, fe.chi.len())?;
    check_points(cf, fe.omega.len())?;
    let half = |f: &dyn Fn(usize) -> Complex64| -> Vec<Complex64> {
        (0..fe.points())
            .map(|i| if fe.chi[i] { f(i) * 0.5 } else { ZERO })
            .collect()
    };
    let diag = cf.h_function(&half(&|_| Complex64::new(1.0, 0.0)))?;
    let upper = cf.h_function(&half(&|i| fe.phase(i)))?;
    let lower = upper.adjoint();
    Ok(cf.lift_generic(&block2(&diag, &upper, &lower, &diag)))
}

/// Matrix-level residuals of a candidate `q`: `‖q² − q‖`, `‖q − q†‖` and
/// `‖quq‖` in operator norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssembledResiduals {
    pub idempotence: f64,
    pub hermiticity: f64,
    pub orthogonality: f64,
}

impl AssembledResiduals {
    pub fn of(q: &ComplexMatrix, u: &ComplexMatrix) -> Self {
        use crate::matrices::operator_norm;
        Self {
            idempotence: operator_norm(&(&(q * q) - q)),
            hermiticity: operator_norm(&(q - &q.adjoint())),
            orthogonality: operator_norm(&(&(q * u) * q)),
        }
    }

    pub fn projection(&self) -> f64 {
        self.idempotence.max(self.hermiticity)
    }

    pub fn feasible(&self, tol: f64) -> bool {
        self.projection() <= tol && self.orthogonality <= tol
    }
}

/// All solutions of the projection and orthogonality systems over a given
/// canonical form: `a_ij = 0`, `φ00 = φ11 = χ/2`, `φ01 = χω/2`,
/// `φ10 = χω̄/2`, one bit `χ` and one unimodular `ω` per spectral point.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpace {
    pub points: Vec<f64>,
}

impl SolutionSpace {
    pub fn points(&self) -> usize {
        self.points.len()
    }

    /// Without a generic part the only solution is `q = 0`.
    pub fn only_zero(&self) -> bool {
        self.points.is_empty()
    }

    /// `2^k`, or `None` when it does not fit in a `u64`.
    pub fn chi_pattern_count(&self) -> Option<u64> {
        1u64.checked_shl(self.points() as u32)
    }

    /// Support pattern number `index`, most significant bit first, so that
    /// increasing indices enumerate patterns in lexicographic order.
    pub fn chi_pattern(&self, index: u64) -> Vec<bool> {
        let k = self.points();
        (0..k).map(|j| index >> (k - 1 - j) & 1 == 1).collect()
    }

    /// Whether a scalar table is one of the solutions.
    pub fn contains(&self, w: &WStarElement) -> bool {
        if w.phi.len() != self.points() || w.a.iter().any(|a| a.norm() > CONDITION_TOL) {
            return false;
        }
        w.phi.iter().all(|[[p00, p01], [p10, p11]]| {
            let x = p00.re;
            let on = (x - 0.5).abs() <= CONDITION_TOL;
            let off = x.abs() <= CONDITION_TOL;
            let phase_ok = if on {
                (p01.norm() - 0.5).abs() <= CONDITION_TOL
            } else {
                p01.norm() <= CONDITION_TOL
            };
            (on || off)
                && p00.im.abs() <= CONDITION_TOL
                && (p11 - p00).norm() <= CONDITION_TOL
                && (p10 - p01.conj()).norm() <= CONDITION_TOL
                && phase_ok
        })
    }
}

impl fmt::Display for SolutionSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.only_zero() {
            return write!(f, "q = 0 is the only feasible projection (no generic part)");
        }
        write!(
            f,
            "a00 = a01 = a10 = a11 = 0; phi00 = phi11 = chi/2, phi01 = chi*omega/2, \
             phi10 = chi*conj(omega)/2; chi in {{0,1}}^{k}, omega in T^{k} over the spectral points {:?}",
            self.points,
            k = self.points()
        )
    }
}

pub fn solve_family(cf: &CanonicalForm) -> SolutionSpace {
    SolutionSpace {
        points: cf.distinct_values(),
    }
}
