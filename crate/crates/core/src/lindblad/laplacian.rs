// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_complex::Complex64;

use super::LindbladGenerator;
use crate::clifford::CliffordAlgebra;
use crate::operator::{
    AntiCommutator, CMat, DensityOperator, HermitianOperator, KuboMori, Multiplication,
    OperatorBasis, OperatorVector, PseudoInverse, Superoperator, TraceConvention,
};
use crate::{Error, NumericSettings, Result};

/// Source of the gradient, divergence and weights.
#[derive(Debug, Clone)]
pub enum Calculus {
    /// Graded Clifford derivatives on the fermionic algebra.
    Fermionic(Arc<CliffordAlgebra>),
    /// Commutators `[V_j, .]` of a detailed-balance generator.
    Lindblad(Arc<LindbladGenerator>),
}

/// How a state multiplies a gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplier {
    /// Kubo-Mori integral; graded as `L_(Gamma(rho), rho)` on the fermionic
    /// algebra and weighted by `exp(+-omega_j / 2)` for generators.
    KuboMori,
    /// `T -> {T, rho} / 2`.
    AntiCommutator,
}

/// A gradient structure: calculus together with a multiplication rule.
#[derive(Debug, Clone)]
pub struct Structure {
    pub calculus: Calculus,
    pub multiplier: Multiplier,
    basis: Arc<OperatorBasis>,
}

impl Structure {
    pub fn fermionic(alg: Arc<CliffordAlgebra>, multiplier: Multiplier) -> Self {
        let basis = alg.hermitian_basis().clone();
        Self {
            calculus: Calculus::Fermionic(alg),
            multiplier,
            basis,
        }
    }

    pub fn lindblad(gen: Arc<LindbladGenerator>, multiplier: Multiplier) -> Self {
        let basis = Arc::new(OperatorBasis::hermitian_full(gen.dim(), gen.convention()));
        Self {
            calculus: Calculus::Lindblad(gen),
            multiplier,
            basis,
        }
    }

    pub fn convention(&self) -> TraceConvention {
        match &self.calculus {
            Calculus::Fermionic(_) => TraceConvention::Normalized,
            Calculus::Lindblad(g) => g.convention(),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.calculus {
            Calculus::Fermionic(a) => a.dim(),
            Calculus::Lindblad(g) => g.dim(),
        }
    }

    /// Reference state of the structure: the normalized identity for the
    /// fermionic calculus and the generator's `sigma` otherwise.
    pub fn invariant_state(&self) -> DensityOperator {
        match &self.calculus {
            Calculus::Fermionic(a) => DensityOperator::maximally_mixed(a.dim(), TraceConvention::Normalized),
            Calculus::Lindblad(g) => g.sigma().clone(),
        }
    }

    /// Orthonormal self-adjoint basis of the state space, identity first.
    pub fn basis(&self) -> &Arc<OperatorBasis> {
        &self.basis
    }

    pub fn gradient(&self, a: &CMat) -> Result<OperatorVector> {
        match &self.calculus {
            Calculus::Fermionic(alg) => alg.gradient(a),
            Calculus::Lindblad(g) => Ok(g.gradient(a)),
        }
    }

    pub fn divergence(&self, v: &OperatorVector) -> Result<CMat> {
        match &self.calculus {
            Calculus::Fermionic(alg) => alg.divergence(v),
            Calculus::Lindblad(g) => Ok(g.divergence(v)),
        }
    }

    /// Multiplication operators frozen at `rho`.
    pub fn at(&self, rho: &DensityOperator, settings: &NumericSettings) -> Result<LocalStructure<'_>> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        let ops: Vec<Box<dyn Multiplication>> = match (&self.calculus, self.multiplier) {
            (Calculus::Fermionic(alg), Multiplier::KuboMori) => {
                let graded = HermitianOperator::with_tolerance(
                    alg.grading(rho.matrix())?,
                    settings.hermitian_tol.max(1e-10),
                )?;
                let graded = DensityOperator::unnormalized(graded, rho.convention())?;
                let km: Box<dyn Multiplication> = Box::new(KuboMori::new(&graded, rho, settings));
                let shared: Arc<dyn Multiplication> = Arc::from(km);
                (0..alg.modes())
                    .map(|_| Box::new(SharedMultiplier(shared.clone())) as Box<dyn Multiplication>)
                    .collect()
            }
            (Calculus::Lindblad(g), Multiplier::KuboMori) => (0..g.terms().len())
                .map(|j| Box::new(g.multiplier(j, rho, settings)) as Box<dyn Multiplication>)
                .collect(),
            (calc, Multiplier::AntiCommutator) => {
                let count = match calc {
                    Calculus::Fermionic(alg) => alg.modes(),
                    Calculus::Lindblad(g) => g.terms().len(),
                };
                let shared: Arc<dyn Multiplication> = Arc::new(AntiCommutator::new(rho));
                (0..count)
                    .map(|_| Box::new(SharedMultiplier(shared.clone())) as Box<dyn Multiplication>)
                    .collect()
            }
        };
        Ok(LocalStructure {
            structure: self,
            ops,
        })
    }
}

struct SharedMultiplier(Arc<dyn Multiplication>);

impl Multiplication for SharedMultiplier {
    fn apply(&self, t: &CMat) -> CMat {
        self.0.apply(t)
    }

    fn apply_inverse(&self, t: &CMat) -> CMat {
        self.0.apply_inverse(t)
    }
}

/// A structure with its multiplication operators evaluated at one state.
pub struct LocalStructure<'a> {
    structure: &'a Structure,
    ops: Vec<Box<dyn Multiplication>>,
}

impl LocalStructure<'_> {
    /// `L_rho` applied componentwise.
    pub fn multiply(&self, v: &OperatorVector) -> OperatorVector {
        OperatorVector::new(
            v.components
                .iter()
                .zip(&self.ops)
                .map(|(a, op)| op.apply(a))
                .collect(),
        )
    }

    pub fn multiply_inverse(&self, v: &OperatorVector) -> OperatorVector {
        OperatorVector::new(
            v.components
                .iter()
                .zip(&self.ops)
                .map(|(a, op)| op.apply_inverse(a))
                .collect(),
        )
    }

    /// `-Delta_rho(A) = sum_j nabla_j^*(L_rho(nabla_j A))`.
    pub fn neg_laplacian(&self, a: &CMat) -> Result<CMat> {
        let g = self.structure.gradient(a)?;
        Ok(-self.structure.divergence(&self.multiply(&g))?)
    }

    /// `<nabla A, L_rho nabla B>`.
    pub fn energy(&self, a: &CMat, b: &CMat) -> Result<Complex64> {
        let ga = self.structure.gradient(a)?;
        let gb = self.structure.gradient(b)?;
        Ok(ga.inner(&self.multiply(&gb), self.structure.convention()))
    }
}

/// `-Delta_rho(A)` without assembling a matrix and without ergodicity checks.
pub fn laplacian_apply(
    rho: &DensityOperator,
    a: &CMat,
    structure: &Structure,
    settings: &NumericSettings,
) -> Result<CMat> {
    structure.at(rho, settings)?.neg_laplacian(a)
}

/// Assembled `-Delta_rho` on the structure's basis with its pseudo-inverse on
/// the complement of the identity.
#[derive(Debug, Clone)]
pub struct TransportLaplacian {
    rho: DensityOperator,
    superop: Superoperator,
    pinv: PseudoInverse,
}

impl TransportLaplacian {
    pub fn build(
        rho: &DensityOperator,
        structure: &Structure,
        settings: &NumericSettings,
    ) -> Result<Self> {
        rho.require_faithful(settings.faithful_eps)?;
        if rho.convention() != structure.convention() {
            return Err(Error::Precondition(format!(
                "state uses the {} trace but the structure uses the {} trace",
                rho.convention().name(),
                structure.convention().name()
            )));
        }
        let local = structure.at(rho, settings)?;
        let basis = structure.basis().clone();
        let superop = Superoperator::build(|a| local.neg_laplacian(a), basis.clone(), settings)?;
        let pinv = superop.pseudo_inverse(&[basis.unit_vector(0)], settings.kernel_rel)?;
        Ok(Self {
            rho: rho.clone(),
            superop,
            pinv,
        })
    }

    pub fn state(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn superoperator(&self) -> &Superoperator {
        &self.superop
    }

    pub fn pseudo_inverse(&self) -> &PseudoInverse {
        &self.pinv
    }

    pub fn apply(&self, a: &CMat) -> CMat {
        self.superop.apply(a)
    }

    /// Matrix `<E_a, -Delta E_b>` in an arbitrary list of elements.
    pub fn matrix_in(&self, elements: &[CMat]) -> CMat {
        let conv = self.superop.basis().convention();
        let images: Vec<CMat> = elements.iter().map(|e| self.apply(e)).collect();
        CMat::from_fn(elements.len(), elements.len(), |a, b| {
            conv.inner(&elements[a], &images[b])
        })
    }

    /// Score `Phi` with `-Delta Phi = X` and `Phi` orthogonal to the identity.
    pub fn solve(&self, x: &CMat, settings: &NumericSettings) -> Result<CMat> {
        let basis = self.superop.basis();
        let conv = basis.convention();
        let tr = conv.trace(x);
        let scale = conv.norm(x).max(1.0);
        if tr.norm() > 1e-10 * scale {
            return Err(Error::Precondition(format!(
                "right-hand side must be traceless, trace is {:.3e}",
                tr.norm()
            )));
        }
        let coeffs = basis.expand(x, settings.expansion_tol)?;
        Ok(basis.combine(&(&self.pinv.matrix * coeffs)))
    }
}
