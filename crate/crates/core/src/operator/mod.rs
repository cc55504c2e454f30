// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense Hermitian linear algebra on finite-dimensional matrix algebras.
//!
//! Operators are stored as dense complex matrices. [`HermitianOperator`] and
//! [`DensityOperator`] are validated wrappers; generic algebra elements (for
//! example fermionic gradients, which need not be self-adjoint) are plain
//! [`CMat`] values.

mod json;
mod lyapunov;
mod multiply;
mod superop;

pub use json::{GeneratorJson, JumpTermJson, OperatorJson};
pub use lyapunov::lyapunov_solve;
pub use multiply::{
    anticommutator_apply, kubo_mori_apply, log_mean, AntiCommutator, KuboMori, Multiplication,
};
pub use superop::{real_part, superop_build_and_pinv, OperatorBasis, PseudoInverse, Superoperator};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, NumericSettings, Result};

/// Dense complex matrix used for every algebra element.
pub type CMat = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Which trace defines states and the Hilbert-Schmidt inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceConvention {
    /// `tau = tr / dim`; the identity is a state.
    Normalized,
    /// The ordinary matrix trace.
    Standard,
}

impl TraceConvention {
    pub fn trace(self, m: &CMat) -> Complex64 {
        let t = m.trace();
        match self {
            TraceConvention::Normalized => t / m.nrows() as f64,
            TraceConvention::Standard => t,
        }
    }

    /// `<a, b> = trace(a^* b)` under this convention.
    pub fn inner(self, a: &CMat, b: &CMat) -> Complex64 {
        let s = a.dotc(b);
        match self {
            TraceConvention::Normalized => s / a.nrows() as f64,
            TraceConvention::Standard => s,
        }
    }

    pub fn norm(self, a: &CMat) -> f64 {
        self.inner(a, a).re.max(0.0).sqrt()
    }

    /// Trace of the identity under this convention.
    pub fn unit(self, dim: usize) -> f64 {
        match self {
            TraceConvention::Normalized => 1.0,
            TraceConvention::Standard => dim as f64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceConvention::Normalized => "normalized",
            TraceConvention::Standard => "standard",
        }
    }
}

pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub(crate) fn hermitian_residual(m: &CMat) -> f64 {
    let scale = max_abs(m).max(1.0);
    max_abs(&(m - m.adjoint())) / scale
}

pub(crate) fn symmetrize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Tuple `(A_1, ..., A_k)` of operators, the target of a gradient.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorVector {
    pub components: Vec<CMat>,
}

impl OperatorVector {
    pub fn new(components: Vec<CMat>) -> Self {
        Self { components }
    }

    pub fn zeros(len: usize, dim: usize) -> Self {
        Self {
            components: vec![CMat::zeros(dim, dim); len],
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `sum_j trace(A_j^* B_j)` under `convention`.
    pub fn inner(&self, other: &Self, convention: TraceConvention) -> Complex64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| convention.inner(a, b))
            .sum()
    }
}

/// Self-adjoint algebra element.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: CMat,
}

impl HermitianOperator {
    pub fn new(mat: CMat) -> Result<Self> {
        Self::with_tolerance(mat, NumericSettings::default().hermitian_tol)
    }

    /// Validates Hermiticity within `tol` (relative to the max-norm) and
    /// stores the symmetrized matrix.
    pub fn with_tolerance(mat: CMat, tol: f64) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        let residual = hermitian_residual(&mat);
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self {
            mat: symmetrize(&mat),
        })
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(c))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMat::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: CMat::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            mat: self.mat.scale(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat - &other.mat,
        }
    }
}

/// Eigendecomposition `H = U diag(values) U^*` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: DVector<f64>,
    pub vectors: CMat,
}

impl Spectrum {
    pub fn of(h: &HermitianOperator) -> Self {
        let (values, vectors) = eigh(h);
        Self { values, vectors }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Moves `m` into the eigenbasis: `U^* m U`.
    pub(crate) fn to_eigenbasis(&self, m: &CMat) -> CMat {
        self.vectors.adjoint() * m * &self.vectors
    }

    pub(crate) fn from_eigenbasis(&self, m: &CMat) -> CMat {
        &self.vectors * m * self.vectors.adjoint()
    }

    /// `U diag(f(values)) U^*`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> CMat {
        let n = self.values.len();
        let mut d = CMat::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = c(f(self.values[i]));
        }
        self.from_eigenbasis(&d)
    }

    pub fn reconstruct(&self) -> CMat {
        self.map(|x| x)
    }
}

/// Hermitian eigendecomposition, eigenvalues ascending.
pub fn eigh(h: &HermitianOperator) -> (DVector<f64>, CMat) {
    let n = h.dim();
    let eig = h.matrix().clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Scalar functions applied through the spectral calculus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    Log,
    Pow(f64),
    Exp,
    Scale(f64),
}

impl MatrixFunction {
    fn name(self) -> &'static str {
        match self {
            MatrixFunction::Log => "log",
            MatrixFunction::Pow(_) => "fractional power",
            MatrixFunction::Exp => "exp",
            MatrixFunction::Scale(_) => "scale",
        }
    }
}

/// Applies `f` to the eigenvalues of `h` in its own eigenbasis.
pub fn matrix_function(h: &HermitianOperator, f: MatrixFunction) -> Result<HermitianOperator> {
    let spec = Spectrum::of(h);
    matrix_function_spectral(&spec, f)
}

pub(crate) fn matrix_function_spectral(spec: &Spectrum, f: MatrixFunction) -> Result<HermitianOperator> {
    let needs_positive = match f {
        MatrixFunction::Log => true,
        MatrixFunction::Pow(s) => s.fract() != 0.0 || s < 0.0,
        _ => false,
    };
    if needs_positive {
        if let Some(&bad) = spec.values.iter().find(|&&l| l <= 0.0) {
            return Err(Error::MatrixFunctionDomain {
                function: f.name(),
                eigenvalue: bad,
            });
        }
    }
    let m = match f {
        MatrixFunction::Log => spec.map(f64::ln),
        MatrixFunction::Pow(s) => spec.map(|x| x.powf(s)),
        MatrixFunction::Exp => spec.map(f64::exp),
        MatrixFunction::Scale(s) => spec.map(|x| s * x),
    };
    Ok(HermitianOperator {
        mat: symmetrize(&m),
    })
}

/// Positive semidefinite operator with an explicit trace convention.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    op: HermitianOperator,
    convention: TraceConvention,
    spectrum: Spectrum,
}

impl DensityOperator {
    /// Validates trace one (under `convention`) and positivity.
    pub fn new(op: HermitianOperator, convention: TraceConvention) -> Result<Self> {
        Self::with_settings(op, convention, &NumericSettings::default())
    }

    pub fn with_settings(
        op: HermitianOperator,
        convention: TraceConvention,
        settings: &NumericSettings,
    ) -> Result<Self> {
        let tr = convention.trace(op.matrix()).re;
        if (tr - 1.0).abs() > settings.trace_tol.max(1e-15 * op.dim() as f64) {
            return Err(Error::InvalidTrace {
                found: tr,
                expected: 1.0,
                convention: convention.name(),
            });
        }
        Self::positive(op, convention, settings)
    }

    /// Positive operator without the unit-trace requirement, for sub- or
    /// super-normalized weights that still enter the transport calculus.
    pub fn unnormalized(op: HermitianOperator, convention: TraceConvention) -> Result<Self> {
        Self::positive(op, convention, &NumericSettings::default())
    }

    fn positive(
        op: HermitianOperator,
        convention: TraceConvention,
        settings: &NumericSettings,
    ) -> Result<Self> {
        let spectrum = Spectrum::of(&op);
        let min = spectrum.min();
        if min < -settings.psd_tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self {
            op,
            convention,
            spectrum,
        })
    }

    /// Maximally mixed state `id / trace(id)`.
    pub fn maximally_mixed(dim: usize, convention: TraceConvention) -> Self {
        let op = HermitianOperator::identity(dim).scale(1.0 / convention.unit(dim));
        Self::unnormalized(op, convention).expect("identity is positive")
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMat {
        self.op.matrix()
    }

    pub fn convention(&self) -> TraceConvention {
        self.convention
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn trace(&self) -> f64 {
        self.convention.trace(self.matrix()).re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.min()
    }

    pub fn is_faithful(&self, eps: f64) -> bool {
        self.min_eigenvalue() >= eps
    }

    pub fn require_faithful(&self, eps: f64) -> Result<()> {
        if self.is_faithful(eps) {
            Ok(())
        } else {
            Err(Error::NotFaithful {
                min_eigenvalue: self.min_eigenvalue(),
                threshold: eps,
            })
        }
    }

    /// `log(rho)`; fails on singular states.
    pub fn log(&self) -> Result<HermitianOperator> {
        matrix_function_spectral(&self.spectrum, MatrixFunction::Log)
    }
}
