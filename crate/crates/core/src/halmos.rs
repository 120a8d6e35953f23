//! Canonical decomposition of a projection `e` and a hermitian involution
//! `u` (equivalently, of the projection pair `e`, `(u + I)/2`).
//!
//! The ambient space splits into
//!
//! ```text
//! M00 ⊕ M01 ⊕ M10 ⊕ M11 ⊕ (M ⊕ M)
//! ```
//!
//! where `M00 = ran e ∩ H+`, `M01 = ker e ∩ H+`, `M10 = ker e ∩ H-`,
//! `M11 = ran e ∩ H-` and `H±` are the `±1` eigenspaces of `u`. In the
//! concatenated basis
//!
//! ```text
//! u = I ⊕ I ⊕ (−I) ⊕ (−I) ⊕ diag[I, −I]
//! e = I ⊕ 0 ⊕ 0 ⊕ I ⊕ [[H, √(H(I−H))], [√(H(I−H)), I−H]]
//! ```
//!
//! with `H` the compression of `e` onto `M`, whose eigenvalues lie strictly
//! inside `(0, 1)`. The basis of the generic copy `M ⊂ H+` is stored in the
//! eigenbasis of `H` (ascending), so `H` is diagonal in that frame.

use crate::error::{Error, Result};
use crate::matrices::{
    apply_scalar_function, hermitian_eigendecomposition, orthonormal_null_basis, relative, Complex64,
    ComplexMatrix, EigenSystem,
};
use crate::settings::Tolerances;

/// One distinct eigenvalue of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDatum {
    pub value: f64,
    pub multiplicity: usize,
    /// Orthonormal eigenvectors in the coordinates of `basis_m_plus`.
    pub vectors: ComplexMatrix,
}

/// Dimensions of the six summands (`m` counts one copy of `M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockDims {
    pub m00: usize,
    pub m01: usize,
    pub m10: usize,
    pub m11: usize,
    pub m: usize,
}

impl BlockDims {
    pub fn total(&self) -> usize {
        self.m00 + self.m01 + self.m10 + self.m11 + 2 * self.m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub basis_m00: ComplexMatrix,
    pub basis_m01: ComplexMatrix,
    pub basis_m10: ComplexMatrix,
    pub basis_m11: ComplexMatrix,
    pub basis_m_plus: ComplexMatrix,
    pub basis_m_minus: ComplexMatrix,
    pub h_spectrum: Vec<SpectralDatum>,
}

impl CanonicalForm {
    pub fn ambient_dim(&self) -> usize {
        self.basis_m00.rows()
    }

    pub fn dims(&self) -> BlockDims {
        BlockDims {
            m00: self.basis_m00.cols(),
            m01: self.basis_m01.cols(),
            m10: self.basis_m10.cols(),
            m11: self.basis_m11.cols(),
            m: self.basis_m_plus.cols(),
        }
    }

    /// The range of `e` meets an eigenspace of `u`.
    pub fn is_case_one(&self) -> bool {
        self.basis_m00.cols() > 0 || self.basis_m11.cols() > 0
    }

    /// Distinct eigenvalues of `H`, ascending.
    pub fn distinct_values(&self) -> Vec<f64> {
        self.h_spectrum.iter().map(|d| d.value).collect()
    }

    /// `H` as an eigensystem in the `basis_m_plus` frame, every eigenvalue
    /// snapped to its cluster value.
    pub fn h_eigensystem(&self) -> EigenSystem {
        let mut eigenvalues = Vec::new();
        for d in &self.h_spectrum {
            eigenvalues.extend(std::iter::repeat_n(d.value, d.multiplicity));
        }
        let blocks: Vec<&ComplexMatrix> = self.h_spectrum.iter().map(|d| &d.vectors).collect();
        let vectors = if blocks.is_empty() {
            ComplexMatrix::zeros(0, 0)
        } else {
            ComplexMatrix::hstack(&blocks)
        };
        EigenSystem { eigenvalues, vectors }
    }

    /// Evaluates a per-spectral-point table on `H` in the `basis_m_plus` frame.
    pub fn h_function(&self, table: &[Complex64]) -> Result<ComplexMatrix> {
        // Cluster values are pairwise separated, so any positive tolerance
        // below the separation recovers exactly the stored clusters.
        apply_scalar_function(&self.h_eigensystem(), table, 0.0)
    }

    pub(crate) fn h_real_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let table: Vec<Complex64> = self
            .h_spectrum
            .iter()
            .map(|d| Complex64::new(f(d.value), 0.0))
            .collect();
        self.h_function(&table).expect("one value per spectral point")
    }

    /// `[B00 B01 B10 B11 B+ B-]`.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::hstack(&[
            &self.basis_m00,
            &self.basis_m01,
            &self.basis_m10,
            &self.basis_m11,
            &self.basis_m_plus,
            &self.basis_m_minus,
        ])
    }

    /// `[B+ B-]`, the basis of the generic part `M ⊕ M`.
    pub fn generic_basis(&self) -> ComplexMatrix {
        ComplexMatrix::hstack(&[&self.basis_m_plus, &self.basis_m_minus])
    }

    /// Lifts a `2m x 2m` block operator on `M ⊕ M` back to the ambient space.
    pub(crate) fn lift_generic(&self, block: &ComplexMatrix) -> ComplexMatrix {
        let g = self.generic_basis();
        &(&g * block) * &g.adjoint()
    }
}

/// 2x2 block matrix `[[a, b], [c, d]]` from square blocks of equal size.
pub(crate) fn block2(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix) -> ComplexMatrix {
    let top = ComplexMatrix::hstack(&[a, b]);
    let bottom = ComplexMatrix::hstack(&[c, d]);
    ComplexMatrix::vstack(&[&top, &bottom])
}

pub(crate) fn validate_projection(e: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    if !e.is_square() {
        return Err(Error::DimensionMismatch(format!("e is {}x{}", e.rows(), e.cols())));
    }
    let defect = e.hermitian_defect().max(relative(&(&(e * e) - e), e));
    if defect > tol.validation {
        return Err(Error::NotProjection { defect });
    }
    Ok(())
}

pub(crate) fn validate_involution(u: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(format!("u is {}x{}", u.rows(), u.cols())));
    }
    let id = ComplexMatrix::identity(u.rows());
    let defect = u.hermitian_defect().max(relative(&(&(u * u) - &id), u));
    if defect > tol.validation {
        return Err(Error::NotInvolution { defect });
    }
    Ok(())
}

/// Orthonormal bases of the `+1` and `−1` eigenspaces of `u`. Together the
/// columns form a unitary matrix.
pub fn eigenspaces_of_involution(u: &ComplexMatrix, tol: &Tolerances) -> Result<(ComplexMatrix, ComplexMatrix)> {
    validate_involution(u, tol)?;
    let es = hermitian_eigendecomposition(u, tol)?;
    let plus: Vec<usize> = (0..es.dim()).filter(|&i| es.eigenvalues[i] > 0.0).collect();
    let minus: Vec<usize> = (0..es.dim()).filter(|&i| es.eigenvalues[i] <= 0.0).collect();
    Ok((es.vectors.select_columns(&plus), es.vectors.select_columns(&minus)))
}

/// Computes the canonical form of the pair `(e, u)`.
pub fn canonical_decomposition(e: &ComplexMatrix, u: &ComplexMatrix, tol: &Tolerances) -> Result<CanonicalForm> {
    if e.rows() != u.rows() || e.cols() != u.cols() {
        return Err(Error::DimensionMismatch(format!(
            "e is {}x{} but u is {}x{}",
            e.rows(),
            e.cols(),
            u.rows(),
            u.cols()
        )));
    }
    validate_projection(e, tol)?;
    let (b_plus, b_minus) = eigenspaces_of_involution(u, tol)?;
    let n = e.rows();
    let id = ComplexMatrix::identity(n);
    let e_minus_i = e - &id;
    let u_minus_i = u - &id;
    let u_plus_i = u + &id;

    let intersect = |a: &ComplexMatrix, b: &ComplexMatrix| orthonormal_null_basis(&ComplexMatrix::vstack(&[a, b]), tol);
    let basis_m00 = intersect(&e_minus_i, &u_minus_i)?;
    let basis_m01 = intersect(e, &u_minus_i)?;
    let basis_m10 = intersect(e, &u_plus_i)?;
    let basis_m11 = intersect(&e_minus_i, &u_plus_i)?;

    // M = H+ ⊖ (M00 ⊕ M01), computed inside the coordinates of H+.
    let taken = ComplexMatrix::hstack(&[&basis_m00, &basis_m01]);
    let taken_in_plus = &b_plus.adjoint() * &taken;
    let complement = orthonormal_null_basis(&taken_in_plus.adjoint(), tol)?;
    let expected_m = b_plus.cols() - taken.cols();
    if complement.cols() != expected_m {
        return Err(Error::InconsistentDecomposition(format!(
            "complement of M00 ⊕ M01 in H+ has dimension {} instead of {expected_m}",
            complement.cols()
        )));
    }
    let basis_m = &b_plus * &complement;

    let h = &(&basis_m.adjoint() * e) * &basis_m;
    let h_eigen = hermitian_eigendecomposition(&h, tol)?;
    let margin = tol.degenerate_margin();
    if let Some(&t) = h_eigen.eigenvalues.iter().find(|&&t| t <= margin || t >= 1.0 - margin) {
        return Err(Error::DegenerateSpectrum { value: t });
    }
    let basis_m_plus = &basis_m * &h_eigen.vectors;

    // Second generic copy: (I − P+) e B+ (H(I−H))^(−1/2), with H diagonal in
    // the eigenframe.
    let p_minus = b_minus.range_projector();
    let scaling: Vec<Complex64> = h_eigen
        .eigenvalues
        .iter()
        .map(|&t| Complex64::new(1.0 / (t * (1.0 - t)).sqrt(), 0.0))
        .collect();
    let basis_m_minus = (&(&p_minus * e) * &basis_m_plus).scale_columns(&scaling);

    let m = basis_m_plus.cols();
    let frame = EigenSystem {
        eigenvalues: h_eigen.eigenvalues.clone(),
        vectors: ComplexMatrix::identity(m),
    };
    let h_spectrum = frame
        .clusters(tol.cluster)
        .into_iter()
        .zip(frame.distinct_values(tol.cluster))
        .map(|(range, value)| SpectralDatum {
            value,
            multiplicity: range.len(),
            vectors: frame.vectors.columns(range.start, range.end),
        })
        .collect();

    let cf = CanonicalForm {
        basis_m00,
        basis_m01,
        basis_m10,
        basis_m11,
        basis_m_plus,
        basis_m_minus,
        h_spectrum,
    };
    let dims = cf.dims();
    if dims.total() != n || dims.m10 + dims.m11 + dims.m != b_minus.cols() {
        return Err(Error::InconsistentDecomposition(format!(
            "block dimensions {dims:?} do not fill the {n}-dimensional space (dim H- = {})",
            b_minus.cols()
        )));
    }
    Ok(cf)
}

/// `e` and `u` in the canonical basis, i.e. `U† e U` and `U† u U` for
/// `U = cf.unitary()`.
pub fn canonical_blocks(cf: &CanonicalForm) -> (ComplexMatrix, ComplexMatrix) {
    let d = cf.dims();
    let n = d.total();
    let mut e = ComplexMatrix::zeros(n, n);
    let mut u = ComplexMatrix::zeros(n, n);
    let one = Complex64::new(1.0, 0.0);
    let mut i = 0;
    for (len, e_val, u_val) in [(d.m00, 1.0, 1.0), (d.m01, 0.0, 1.0), (d.m10, 0.0, -1.0), (d.m11, 1.0, -1.0)] {
        for _ in 0..len {
            e[(i, i)] = one * e_val;
            u[(i, i)] = one * u_val;
            i += 1;
        }
    }
    let generic = generic_e_block(cf);
    for r in 0..2 * d.m {
        for c in 0..2 * d.m {
            e[(i + r, i + c)] = generic[(r, c)];
        }
        u[(i + r, i + r)] = one * if r < d.m { 1.0 } else { -1.0 };
    }
    (e, u)
}

/// `[[H, √(H(I−H))], [√(H(I−H)), I−H]]` in the generic frame.
pub(crate) fn generic_e_block(cf: &CanonicalForm) -> ComplexMatrix {
    let h = cf.h_real_function(|t| t);
    let s = cf.h_real_function(|t| (t * (1.0 - t)).sqrt());
    let c = cf.h_real_function(|t| 1.0 - t);
    block2(&h, &s, &s, &c)
}

/// Rebuilds `e` and `u` in the original coordinates.
pub fn reconstruct(cf: &CanonicalForm) -> (ComplexMatrix, ComplexMatrix) {
    let p00 = cf.basis_m00.range_projector();
    let p01 = cf.basis_m01.range_projector();
    let p10 = cf.basis_m10.range_projector();
    let p11 = cf.basis_m11.range_projector();
    let generic_e = cf.lift_generic(&generic_e_block(cf));
    let e = &(&p00 + &p11) + &generic_e;

    let plus = &(&p00 + &p01) + &cf.basis_m_plus.range_projector();
    let minus = &(&p10 + &p11) + &cf.basis_m_minus.range_projector();
    (e, &plus - &minus)
}
