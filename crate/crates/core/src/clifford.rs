// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Clifford algebra over `R^n` in the Jordan-Wigner realization.
//!
//! The generators are `Q_j = sigma_z^{(j-1)} (x) sigma_x (x) id^{(n-j)}`.
//! Basis elements `Q^alpha = Q_1^{alpha_1} ... Q_n^{alpha_n}` are indexed
//! lexicographically with `alpha_1` the most significant bit, so index 0 is
//! the identity and, for `n = 2`, the order is `00, 01, 10, 11`.
//!
//! All inner products use the normalized trace `tau = tr / 2^n`, under which
//! the `Q^alpha` are orthonormal.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::operator::{CMat, OperatorBasis, OperatorVector, TraceConvention};
use crate::{Error, NumericSettings, Result};

pub const MAX_MODES: usize = 6;

const TAU: TraceConvention = TraceConvention::Normalized;

/// Serializable algebra descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliffordJson {
    pub n: usize,
}

#[derive(Debug, Clone)]
pub struct CliffordAlgebra {
    n: usize,
    generators: Vec<CMat>,
    basis: Arc<OperatorBasis>,
    hermitian: Arc<OperatorBasis>,
    degrees: Vec<usize>,
    expansion_tol: f64,
}

fn pauli(name: char) -> CMat {
    let (o, z, i) = (
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 1.0),
    );
    match name {
        'x' => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        'y' => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        'z' => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => CMat::identity(2, 2),
    }
}

fn kron_all(factors: &[CMat]) -> CMat {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

impl CliffordAlgebra {
    /// Builds the algebra on `n` modes, `1 <= n <= 6`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_settings(n, &NumericSettings::default())
    }

    pub fn with_settings(n: usize, settings: &NumericSettings) -> Result<Self> {
        if n == 0 || n > MAX_MODES {
            return Err(Error::Size(format!(
                "number of modes must be in 1..={MAX_MODES}, got {n}"
            )));
        }
        let generators: Vec<CMat> = (0..n)
            .map(|j| {
                let factors: Vec<CMat> = (0..n)
                    .map(|i| match i.cmp(&j) {
                        std::cmp::Ordering::Less => pauli('z'),
                        std::cmp::Ordering::Equal => pauli('x'),
                        std::cmp::Ordering::Greater => pauli('i'),
                    })
                    .collect();
                kron_all(&factors)
            })
            .collect();
        let dim = 1usize << n;
        let mut elements = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        let mut hermitian = Vec::with_capacity(dim);
        for idx in 0..dim {
            let mut q = CMat::identity(dim, dim);
            let mut degree: usize = 0;
            for (j, g) in generators.iter().enumerate() {
                if idx >> (n - 1 - j) & 1 == 1 {
                    q *= g;
                    degree += 1;
                }
            }
            let h = if (degree * degree.saturating_sub(1) / 2) % 2 == 1 {
                q.map(|z| z * Complex64::new(0.0, 1.0))
            } else {
                q.clone()
            };
            elements.push(q);
            hermitian.push(h);
            degrees.push(degree);
        }
        Ok(Self {
            n,
            generators,
            basis: Arc::new(OperatorBasis::new(elements, TAU)?),
            hermitian: Arc::new(OperatorBasis::new(hermitian, TAU)?),
            degrees,
            expansion_tol: settings.expansion_tol,
        })
    }

    pub fn from_json(desc: CliffordJson) -> Result<Self> {
        Self::new(desc.n)
    }

    pub fn to_json(&self) -> CliffordJson {
        CliffordJson { n: self.n }
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    /// Matrix size `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Dimension of the algebra, `2^n` (it is a proper subalgebra of the
    /// `2^n x 2^n` matrices for every `n`).
    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn generator(&self, j: usize) -> &CMat {
        &self.generators[j]
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    /// The `Q^alpha` basis (not all elements are self-adjoint).
    pub fn basis(&self) -> &Arc<OperatorBasis> {
        &self.basis
    }

    /// Self-adjoint orthonormal basis: `Q^alpha`, or `i Q^alpha` when
    /// `Q^alpha` is skew-adjoint.
    pub fn hermitian_basis(&self) -> &Arc<OperatorBasis> {
        &self.hermitian
    }

    pub fn element(&self, index: usize) -> &CMat {
        self.basis.element(index)
    }

    /// Multi-index of a basis position, `alpha_1` first.
    pub fn alpha(&self, index: usize) -> Vec<u8> {
        (0..self.n)
            .map(|j| (index >> (self.n - 1 - j) & 1) as u8)
            .collect()
    }

    pub fn index_of(&self, alpha: &[u8]) -> Result<usize> {
        if alpha.len() != self.n || alpha.iter().any(|&a| a > 1) {
            return Err(Error::Size(format!(
                "multi-index {alpha:?} is not in {{0,1}}^{}",
                self.n
            )));
        }
        Ok(alpha.iter().fold(0, |acc, &a| (acc << 1) | a as usize))
    }

    /// `|alpha|` of a basis position.
    pub fn degree(&self, index: usize) -> usize {
        self.degrees[index]
    }

    pub fn grading_sign(&self, index: usize) -> f64 {
        if self.degrees[index] % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    fn check_dim(&self, a: &CMat) -> Result<()> {
        if a.nrows() != self.dim() || a.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.nrows(),
            });
        }
        Ok(())
    }

    /// Coefficients `c_alpha = tau((Q^alpha)^* A)`.
    pub fn coefficients(&self, a: &CMat) -> Result<DVector<Complex64>> {
        self.check_dim(a)?;
        self.basis.expand(a, self.expansion_tol)
    }

    pub fn combine(&self, coeffs: &DVector<Complex64>) -> CMat {
        self.basis.combine(coeffs)
    }

    /// Grading `Gamma`: flips the sign of odd-degree coefficients.
    pub fn grading(&self, a: &CMat) -> Result<CMat> {
        let mut c = self.coefficients(a)?;
        for (i, z) in c.iter_mut().enumerate() {
            *z *= self.grading_sign(i);
        }
        Ok(self.combine(&c))
    }

    /// `nabla_j A = (Q_j A - Gamma(A) Q_j) / 2`.
    pub fn derivative(&self, j: usize, a: &CMat) -> Result<CMat> {
        let g = self.grading(a)?;
        Ok(self.derivative_graded(j, a, &g))
    }

    fn derivative_graded(&self, j: usize, a: &CMat, graded: &CMat) -> CMat {
        let q = &self.generators[j];
        (q * a - graded * q).scale(0.5)
    }

    /// `nabla_j^* A = (Q_j A + Gamma(A) Q_j) / 2`.
    pub fn adjoint_derivative(&self, j: usize, a: &CMat) -> Result<CMat> {
        let g = self.grading(a)?;
        let q = &self.generators[j];
        Ok((q * a + g * q).scale(0.5))
    }

    pub fn gradient(&self, a: &CMat) -> Result<OperatorVector> {
        let g = self.grading(a)?;
        Ok(OperatorVector::new(
            (0..self.n)
                .map(|j| self.derivative_graded(j, a, &g))
                .collect(),
        ))
    }

    /// `div(A) = -sum_j nabla_j^*(A_j)`.
    pub fn divergence(&self, v: &OperatorVector) -> Result<CMat> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let mut out = CMat::zeros(self.dim(), self.dim());
        for (j, a) in v.components.iter().enumerate() {
            out -= self.adjoint_derivative(j, a)?;
        }
        Ok(out)
    }

    /// Number operator `N A = -div(nabla A)`.
    pub fn number_operator(&self, a: &CMat) -> Result<CMat> {
        Ok(-self.divergence(&self.gradient(a)?)?)
    }

    /// `|alpha|` for every basis position: the spectrum of `N`.
    pub fn number_eigenvalues(&self) -> &[usize] {
        &self.degrees
    }

    /// `P_t A = exp(-t N) A`, applied by damping each coefficient by
    /// `exp(-t |alpha|)`.
    pub fn semigroup_apply(&self, t: f64, a: &CMat) -> Result<CMat> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("semigroup time must be >= 0, got {t}")));
        }
        let mut c = self.coefficients(a)?;
        for (i, z) in c.iter_mut().enumerate() {
            *z *= (-t * self.degrees[i] as f64).exp();
        }
        Ok(self.combine(&c))
    }

    /// Graded generator `2 sum_j (Q_j Gamma(A) Q_j - A)`, equal to `-4 N`.
    pub fn graded_generator(&self, a: &CMat) -> Result<CMat> {
        let g = self.grading(a)?;
        Ok(self.sandwich_sum(&g) - a.scale(2.0 * self.n as f64))
    }

    /// Ungraded generator `2 sum_j (Q_j A Q_j - A)`.
    pub fn ungraded_generator(&self, a: &CMat) -> Result<CMat> {
        self.check_dim(a)?;
        Ok(self.sandwich_sum(a) - a.scale(2.0 * self.n as f64))
    }

    fn sandwich_sum(&self, a: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim(), self.dim());
        for q in &self.generators {
            out += q * a * q;
        }
        out.scale(2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    #[test]
    fn size_limits() {
        assert!(matches!(CliffordAlgebra::new(0), Err(Error::Size(_))));
        assert!(matches!(CliffordAlgebra::new(7), Err(Error::Size(_))));
    }

    #[test]
    fn single_mode_generator_is_sigma_x() {
        let alg = CliffordAlgebra::new(1).unwrap();
        assert_eq!(alg.generator(0), &pauli('x'));
    }

    #[test]
    fn two_mode_generators() {
        let alg = CliffordAlgebra::new(2).unwrap();
        assert_eq!(alg.generator(0), &pauli('x').kronecker(&pauli('i')));
        assert_eq!(alg.generator(1), &pauli('z').kronecker(&pauli('x')));
    }

    #[test]
    fn car_relations() {
        for n in 1..=4 {
            let alg = CliffordAlgebra::new(n).unwrap();
            let id = CMat::identity(alg.dim(), alg.dim());
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (alg.generator(i), alg.generator(j));
                    let anti = a * b + b * a;
                    let expect = if i == j { id.scale(2.0) } else { id.scale(0.0) };
                    assert!(close(&anti, &expect, 1e-12));
                }
            }
        }
    }

    #[test]
    fn lexicographic_indexing() {
        let alg = CliffordAlgebra::new(3).unwrap();
        assert_eq!(alg.alpha(0b101), vec![1, 0, 1]);
        assert_eq!(alg.index_of(&[1, 0, 1]).unwrap(), 5);
        let q13 = alg.generator(0) * alg.generator(2);
        assert!(close(alg.element(5), &q13, 1e-15));
    }

    #[test]
    fn grading_on_basis() {
        let alg = CliffordAlgebra::new(1).unwrap();
        let x = alg.generator(0).clone();
        assert!(close(&alg.grading(&x).unwrap(), &(-x), 1e-14));
        let alg2 = CliffordAlgebra::new(2).unwrap();
        let q11 = alg2.element(alg2.index_of(&[1, 1]).unwrap()).clone();
        assert!(close(&alg2.grading(&q11).unwrap(), &q11, 1e-14));
    }

    #[test]
    fn gradient_single_mode() {
        let alg = CliffordAlgebra::new(1).unwrap();
        let (a, b) = (0.7, -1.3);
        let m = CMat::identity(2, 2).scale(a) + alg.generator(0).scale(b);
        let g = alg.gradient(&m).unwrap();
        assert!(close(&g.components[0], &CMat::identity(2, 2).scale(b), 1e-14));
    }

    #[test]
    fn gradient_of_top_element_two_modes() {
        let alg = CliffordAlgebra::new(2).unwrap();
        let q11 = alg.element(3).clone();
        let g = alg.gradient(&q11).unwrap();
        assert!(close(&g.components[0], alg.element(1), 1e-14));
        assert!(close(&g.components[1], &(-alg.element(2)), 1e-14));
    }

    #[test]
    fn divergence_of_unit_first_component() {
        let alg = CliffordAlgebra::new(3).unwrap();
        let mut v = OperatorVector::zeros(3, alg.dim());
        v.components[0] = CMat::identity(alg.dim(), alg.dim());
        let d = alg.divergence(&v).unwrap();
        assert!(close(&d, &(-alg.generator(0)), 1e-14));
    }

    #[test]
    fn number_operator_counts_degree() {
        for n in 1..=3 {
            let alg = CliffordAlgebra::new(n).unwrap();
            for idx in 0..alg.basis_len() {
                let q = alg.element(idx);
                let nq = alg.number_operator(q).unwrap();
                assert!(close(&nq, &q.scale(alg.degree(idx) as f64), 1e-13));
            }
        }
    }

    #[test]
    fn negative_time_rejected() {
        let alg = CliffordAlgebra::new(1).unwrap();
        let id = CMat::identity(2, 2);
        assert!(matches!(alg.semigroup_apply(-1.0, &id), Err(Error::Domain(_))));
    }

    #[test]
    fn hermitian_basis_is_self_adjoint() {
        let alg = CliffordAlgebra::new(3).unwrap();
        for e in alg.hermitian_basis().elements() {
            assert!(close(e, &e.adjoint(), 1e-15));
        }
    }

    #[test]
    fn wrong_dimension_rejected() {
        let alg = CliffordAlgebra::new(2).unwrap();
        assert!(matches!(
            alg.grading(&CMat::identity(2, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
