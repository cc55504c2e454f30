// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{c, CMat, TraceConvention, ONE, ZERO};
use crate::{Error, NumericSettings, Result};

/// Orthonormal basis of an operator subspace under `<A, B> = trace(A^* B)`.
///
/// Element 0 is always proportional to the identity.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    elements: Vec<CMat>,
    convention: TraceConvention,
}

impl OperatorBasis {
    /// Wraps `elements`, checking the Gram matrix against the identity.
    pub fn new(elements: Vec<CMat>, convention: TraceConvention) -> Result<Self> {
        let basis = Self {
            elements,
            convention,
        };
        let gram = basis.gram();
        let err = (&gram - CMat::identity(gram.nrows(), gram.ncols())).camax();
        if err > 1e-10 {
            return Err(Error::Precondition(format!(
                "basis is not orthonormal (Gram error {err:.3e})"
            )));
        }
        Ok(basis)
    }

    /// Hermitian basis of all `d x d` matrices: the scaled identity, then
    /// symmetric and antisymmetric off-diagonal units, then traceless
    /// diagonals.
    pub fn hermitian_full(d: usize, convention: TraceConvention) -> Self {
        let scale = match convention {
            TraceConvention::Standard => 1.0,
            TraceConvention::Normalized => (d as f64).sqrt(),
        };
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut elements = Vec::with_capacity(d * d);
        elements.push(CMat::identity(d, d).scale(1.0 / (d as f64).sqrt()));
        for j in 0..d {
            for k in (j + 1)..d {
                let mut s = CMat::zeros(d, d);
                s[(j, k)] = c(r);
                s[(k, j)] = c(r);
                elements.push(s);
                let mut a = CMat::zeros(d, d);
                a[(j, k)] = Complex64::new(0.0, -r);
                a[(k, j)] = Complex64::new(0.0, r);
                elements.push(a);
            }
        }
        for l in 1..d {
            let norm = ((l * (l + 1)) as f64).sqrt();
            let mut m = CMat::zeros(d, d);
            for i in 0..l {
                m[(i, i)] = c(1.0 / norm);
            }
            m[(l, l)] = c(-(l as f64) / norm);
            elements.push(m);
        }
        for e in elements.iter_mut() {
            *e = e.scale(scale);
        }
        Self {
            elements,
            convention,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn op_dim(&self) -> usize {
        self.elements.first().map_or(0, |e| e.nrows())
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CMat {
        &self.elements[i]
    }

    pub fn convention(&self) -> TraceConvention {
        self.convention
    }

    pub fn gram(&self) -> CMat {
        let n = self.len();
        CMat::from_fn(n, n, |i, j| {
            self.convention.inner(&self.elements[i], &self.elements[j])
        })
    }

    /// Coefficients `<B_a, A>`; no residual check.
    pub fn coefficients(&self, a: &CMat) -> DVector<Complex64> {
        DVector::from_iterator(
            self.len(),
            self.elements.iter().map(|b| self.convention.inner(b, a)),
        )
    }

    /// Coefficients of `a`, failing if `a` is not in the span.
    pub fn expand(&self, a: &CMat, tol: f64) -> Result<DVector<Complex64>> {
        let coeffs = self.coefficients(a);
        let back = self.combine(&coeffs);
        let residual = self.convention.norm(&(a - back)) / self.convention.norm(a).max(1.0);
        if residual > tol {
            return Err(Error::Expansion { residual });
        }
        Ok(coeffs)
    }

    pub fn combine(&self, coeffs: &DVector<Complex64>) -> CMat {
        let d = self.op_dim();
        let mut out = CMat::zeros(d, d);
        for (e, &w) in self.elements.iter().zip(coeffs.iter()) {
            if w != ZERO {
                out += e * w;
            }
        }
        out
    }

    /// Unit coordinate vector of basis element `i`.
    pub fn unit_vector(&self, i: usize) -> DVector<Complex64> {
        let mut v = DVector::from_element(self.len(), ZERO);
        v[i] = ONE;
        v
    }
}

/// Matrix of a linear map on an operator subspace in an orthonormal basis:
/// `matrix[(a, b)] = <B_a, map(B_b)>`.
#[derive(Debug, Clone)]
pub struct Superoperator {
    basis: Arc<OperatorBasis>,
    matrix: CMat,
}

/// Moore-Penrose inverse restricted to the complement of a kernel.
#[derive(Debug, Clone)]
pub struct PseudoInverse {
    pub matrix: CMat,
    pub kernel_dim: usize,
    pub singular_values: DVector<f64>,
}

impl Superoperator {
    /// Assembles the matrix column by column; every image must stay in the
    /// span of the basis.
    pub fn build<F>(map: F, basis: Arc<OperatorBasis>, settings: &NumericSettings) -> Result<Self>
    where
        F: Fn(&CMat) -> Result<CMat>,
    {
        let n = basis.len();
        let mut matrix = CMat::zeros(n, n);
        for b in 0..n {
            let image = map(basis.element(b))?;
            let col = basis.expand(&image, settings.expansion_tol)?;
            matrix.set_column(b, &col);
        }
        Ok(Self { basis, matrix })
    }

    pub fn from_matrix(basis: Arc<OperatorBasis>, matrix: CMat) -> Result<Self> {
        if matrix.shape() != (basis.len(), basis.len()) {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: matrix.nrows(),
            });
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &Arc<OperatorBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn apply(&self, a: &CMat) -> CMat {
        let coeffs = self.basis.coefficients(a);
        self.basis.combine(&(&self.matrix * coeffs))
    }

    /// Largest entry of `M - M^*`.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).camax()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()).scale(0.5);
        let mut v: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Adjoint map, `<B_a, map^*(B_b)> = conj(matrix[(b, a)])`.
    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// Pseudo-inverse on the orthogonal complement of `declared_kernel`.
    ///
    /// Singular values below `kernel_rel * sigma_max` are counted as kernel;
    /// a count different from the declared one is an ergodicity violation.
    pub fn pseudo_inverse(
        &self,
        declared_kernel: &[DVector<Complex64>],
        kernel_rel: f64,
    ) -> Result<PseudoInverse> {
        let n = self.matrix.nrows();
        let svd = self.matrix.clone().svd(true, true);
        let sigma = svd.singular_values.clone();
        let smax = sigma.iter().copied().fold(0.0, f64::max);
        let threshold = kernel_rel * smax;
        let detected = sigma.iter().filter(|&&s| s < threshold || smax == 0.0).count();
        if detected != declared_kernel.len() {
            return Err(Error::Ergodicity {
                declared: declared_kernel.len(),
                detected,
            });
        }
        for k in declared_kernel {
            let image = (&self.matrix * k).norm();
            if image > threshold.max(1e-300) * k.norm() * 10.0 {
                return Err(Error::Ergodicity {
                    declared: declared_kernel.len(),
                    detected: detected.saturating_sub(1),
                });
            }
        }
        let u = svd.u.as_ref().expect("svd computed with u");
        let vt = svd.v_t.as_ref().expect("svd computed with v_t");
        let mut pinv = CMat::zeros(n, n);
        for (i, &s) in sigma.iter().enumerate() {
            if s < threshold || s == 0.0 {
                continue;
            }
            let v = vt.row(i).adjoint();
            let ui = u.column(i);
            pinv += (v * ui.adjoint()).scale(1.0 / s);
        }
        Ok(PseudoInverse {
            matrix: pinv,
            kernel_dim: detected,
            singular_values: sigma,
        })
    }
}

/// Builds the superoperator of `map` and its pseudo-inverse on the
/// complement of the declared kernel.
pub fn superop_build_and_pinv<F>(
    map: F,
    basis: Arc<OperatorBasis>,
    kernel_vectors: &[DVector<Complex64>],
    settings: &NumericSettings,
) -> Result<(Superoperator, PseudoInverse)>
where
    F: Fn(&CMat) -> Result<CMat>,
{
    let sup = Superoperator::build(map, basis, settings)?;
    let pinv = sup.pseudo_inverse(kernel_vectors, settings.kernel_rel)?;
    Ok((sup, pinv))
}

/// Real part of a complex matrix, for maps known to be real in their basis.
pub fn real_part(m: &CMat) -> DMatrix<f64> {
    m.map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_basis_is_orthonormal() {
        for d in 1..5 {
            for conv in [TraceConvention::Standard, TraceConvention::Normalized] {
                let b = OperatorBasis::hermitian_full(d, conv);
                assert_eq!(b.len(), d * d);
                let err = (b.gram() - CMat::identity(d * d, d * d)).camax();
                assert!(err < 1e-12, "d={d} {conv:?} err={err}");
                for e in b.elements() {
                    assert!((e - e.adjoint()).camax() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn identity_map_pinv() {
        let basis = Arc::new(OperatorBasis::hermitian_full(2, TraceConvention::Standard));
        let s = NumericSettings::default();
        let (sup, pinv) = superop_build_and_pinv(|a| Ok(a.clone()), basis, &[], &s).unwrap();
        assert!((sup.matrix() - CMat::identity(4, 4)).camax() < 1e-14);
        assert!((pinv.matrix - CMat::identity(4, 4)).camax() < 1e-14);
    }

    #[test]
    fn kernel_mismatch_is_ergodicity_error() {
        let basis = Arc::new(OperatorBasis::hermitian_full(2, TraceConvention::Standard));
        let s = NumericSettings::default();
        let sup = Superoperator::build(|a| Ok(a.clone()), basis.clone(), &s).unwrap();
        let k = basis.unit_vector(0);
        assert!(matches!(
            sup.pseudo_inverse(&[k], 1e-9),
            Err(Error::Ergodicity { declared: 1, detected: 0 })
        ));
    }

    #[test]
    fn expansion_outside_span_fails() {
        let basis = OperatorBasis::new(
            vec![CMat::identity(2, 2).scale(std::f64::consts::FRAC_1_SQRT_2)],
            TraceConvention::Standard,
        )
        .unwrap();
        let mut a = CMat::zeros(2, 2);
        a[(0, 1)] = ONE;
        assert!(matches!(basis.expand(&a, 1e-10), Err(Error::Expansion { .. })));
    }
}
