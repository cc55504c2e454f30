// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad generators satisfying detailed balance, their commutator
//! calculus, and the transport Laplacian built from a gradient structure.

mod entropy;
mod laplacian;

pub use entropy::{fisher_information, relative_entropy};
pub use laplacian::{laplacian_apply, Calculus, Multiplier, Structure, TransportLaplacian};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::clifford::CliffordAlgebra;
use crate::operator::{
    CMat, DensityOperator, GeneratorJson, HermitianOperator, JumpTermJson, KuboMori, Multiplication,
    OperatorJson, OperatorVector, TraceConvention,
};
use crate::{Error, NumericSettings, Result};

/// One jump operator `V_j` with Bohr frequency `omega_j` and the index of
/// its adjoint partner.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpTerm {
    pub v: CMat,
    pub omega: f64,
    pub adjoint: usize,
}

/// Which structural condition a generator violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Dimension,
    AdjointIndex,
    AdjointOperator,
    AntisymmetricFrequency,
    ModularEigenvector,
}

impl Condition {
    pub fn describe(self) -> &'static str {
        match self {
            Condition::Dimension => "jump operator has the wrong dimension",
            Condition::AdjointIndex => "adjoint index is out of range or not an involution",
            Condition::AdjointOperator => "V of the adjoint index is not the adjoint of V",
            Condition::AntisymmetricFrequency => "omega of the adjoint index is not -omega",
            Condition::ModularEigenvector => "sigma V sigma^-1 differs from exp(-omega) V",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub index: usize,
    pub residual: f64,
}

/// Per-term residuals of the detailed-balance conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub adjoint_residual: Vec<f64>,
    pub frequency_residual: Vec<f64>,
    pub modular_residual: Vec<f64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.adjoint_residual
            .iter()
            .chain(&self.frequency_residual)
            .chain(&self.modular_residual)
            .fold(0.0, |a, &b| a.max(b))
    }
}

/// Heisenberg or Schroedinger picture for [`LindbladGenerator::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Picture {
    Heisenberg,
    Schroedinger,
}

/// `L = sum_j exp(-omega_j / 2) (V_j^*[A, V_j] + [V_j^*, A] V_j)` with
/// invariant state `sigma`.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    sigma: DensityOperator,
    terms: Vec<JumpTerm>,
}

pub const ADJOINT_TOL: f64 = 1e-12;
pub const MODULAR_TOL: f64 = 1e-10;

fn rel_max(a: &CMat, scale: &CMat) -> f64 {
    let s = scale.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(f64::MIN_POSITIVE);
    a.iter().fold(0.0f64, |m, z| m.max(z.norm())) / s.max(1.0)
}

impl LindbladGenerator {
    /// Builds and validates; fails on the first violated condition.
    pub fn new(sigma: DensityOperator, terms: Vec<JumpTerm>) -> Result<Self> {
        let generator = Self::new_unchecked(sigma, terms);
        let report = generator.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidGenerator(format!(
                "term {}: {} (residual {:.3e})",
                v.index,
                v.condition.describe(),
                v.residual
            )));
        }
        Ok(generator)
    }

    /// Stores the data without checking it; use [`validate`](Self::validate).
    pub fn new_unchecked(sigma: DensityOperator, terms: Vec<JumpTerm>) -> Self {
        Self { sigma, terms }
    }

    pub fn sigma(&self) -> &DensityOperator {
        &self.sigma
    }

    pub fn terms(&self) -> &[JumpTerm] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn convention(&self) -> TraceConvention {
        self.sigma.convention()
    }

    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let n = self.terms.len();
        let mut violations = Vec::new();
        let mut fail = |condition, index, residual| {
            violations.push(Violation {
                condition,
                index,
                residual,
            })
        };
        let sigma_inv = self.sigma.spectrum().map(|x| 1.0 / x);
        let faithful = self.sigma.min_eigenvalue() > 0.0;
        let mut adjoint_residual = vec![0.0; n];
        let mut frequency_residual = vec![0.0; n];
        let mut modular_residual = vec![0.0; n];
        for (j, t) in self.terms.iter().enumerate() {
            if t.v.nrows() != d || t.v.ncols() != d {
                fail(Condition::Dimension, j, f64::INFINITY);
                continue;
            }
            match self.terms.get(t.adjoint) {
                Some(partner) if partner.adjoint == j && partner.v.shape() == (d, d) => {
                    adjoint_residual[j] = rel_max(&(&partner.v - t.v.adjoint()), &t.v);
                    if adjoint_residual[j] > ADJOINT_TOL {
                        fail(Condition::AdjointOperator, j, adjoint_residual[j]);
                    }
                    frequency_residual[j] = (partner.omega + t.omega).abs();
                    if frequency_residual[j] > ADJOINT_TOL * t.omega.abs().max(1.0) {
                        fail(Condition::AntisymmetricFrequency, j, frequency_residual[j]);
                    }
                }
                _ => fail(Condition::AdjointIndex, j, f64::INFINITY),
            }
            if faithful {
                let lhs = self.sigma.matrix() * &t.v * &sigma_inv;
                let rhs = t.v.scale((-t.omega).exp());
                modular_residual[j] = rel_max(&(lhs - &rhs), &rhs);
            } else {
                modular_residual[j] = f64::INFINITY;
            }
            if modular_residual[j] > MODULAR_TOL {
                fail(Condition::ModularEigenvector, j, modular_residual[j]);
            }
        }
        ValidationReport {
            adjoint_residual,
            frequency_residual,
            modular_residual,
            violations,
        }
    }

    /// Applies the generator in the requested picture.
    ///
    /// The Schroedinger form is the trace dual,
    /// `L^*(B) = sum_j exp(-omega_j / 2) (2 V_j B V_j^* - {V_j^* V_j, B})`.
    pub fn apply(&self, a: &CMat, picture: Picture) -> CMat {
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for t in &self.terms {
            let w = (-0.5 * t.omega).exp();
            let vd = t.v.adjoint();
            let vdv = &vd * &t.v;
            let term = match picture {
                Picture::Heisenberg => (&vd * a * &t.v).scale(2.0) - &vdv * a - a * &vdv,
                Picture::Schroedinger => (&t.v * a * &vd).scale(2.0) - &vdv * a - a * &vdv,
            };
            out += term.scale(w);
        }
        out
    }

    /// `nabla_j A = [V_j, A]`.
    pub fn derivative(&self, j: usize, a: &CMat) -> CMat {
        let v = &self.terms[j].v;
        v * a - a * v
    }

    pub fn gradient(&self, a: &CMat) -> OperatorVector {
        OperatorVector::new((0..self.terms.len()).map(|j| self.derivative(j, a)).collect())
    }

    /// `nabla_j^* = nabla_{jbar}`, that is `A -> [V_j^*, A]`.
    pub fn adjoint_derivative(&self, j: usize, a: &CMat) -> CMat {
        self.derivative(self.terms[j].adjoint, a)
    }

    /// `div(A) = -sum_j nabla_j^*(A_j)`.
    pub fn divergence(&self, v: &OperatorVector) -> CMat {
        let d = self.dim();
        v.components
            .iter()
            .enumerate()
            .fold(CMat::zeros(d, d), |acc, (j, a)| acc - self.adjoint_derivative(j, a))
    }

    /// Weighted Kubo-Mori operator of term `j` at `rho`.
    pub fn multiplier(
        &self,
        j: usize,
        rho: &DensityOperator,
        settings: &NumericSettings,
    ) -> KuboMori {
        let w = (0.5 * self.terms[j].omega).exp();
        KuboMori::weighted(rho, rho, w, 1.0 / w, settings)
    }

    /// Generator of the fermionic Fokker-Planck semigroup on the full
    /// `2^n x 2^n` matrices: `V_j = Q_j`, `omega_j = 0`, `sigma = id / 2^n`.
    pub fn fermionic(alg: &CliffordAlgebra) -> Self {
        let sigma = DensityOperator::maximally_mixed(alg.dim(), TraceConvention::Standard);
        let terms = alg
            .generators()
            .iter()
            .enumerate()
            .map(|(j, q)| JumpTerm {
                v: q.clone(),
                omega: 0.0,
                adjoint: j,
            })
            .collect();
        Self::new_unchecked(sigma, terms)
    }

    /// Qubit amplitude damping with invariant state `diag(p, 1 - p)`:
    /// `V_0 = |1><0|` with `omega = ln(p / (1 - p))` and its adjoint.
    pub fn damped_qubit(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("population must lie in (0, 1), got {p}")));
        }
        let sigma = DensityOperator::new(
            HermitianOperator::from_real(&DMatrix::from_row_slice(2, 2, &[p, 0.0, 0.0, 1.0 - p]))?,
            TraceConvention::Standard,
        )?;
        let mut v = CMat::zeros(2, 2);
        v[(1, 0)] = Complex64::new(1.0, 0.0);
        let omega = (p / (1.0 - p)).ln();
        let terms = vec![
            JumpTerm {
                v: v.clone(),
                omega,
                adjoint: 1,
            },
            JumpTerm {
                v: v.adjoint(),
                omega: -omega,
                adjoint: 0,
            },
        ];
        Self::new(sigma, terms)
    }

    pub fn from_json(desc: &GeneratorJson, settings: &NumericSettings) -> Result<Self> {
        let sigma = DensityOperator::with_settings(
            HermitianOperator::with_tolerance(desc.sigma.to_matrix()?, settings.hermitian_tol)?,
            TraceConvention::Standard,
            settings,
        )?;
        let terms = desc
            .terms
            .iter()
            .map(|t| {
                Ok(JumpTerm {
                    v: t.v.to_matrix()?,
                    omega: t.omega,
                    adjoint: t.adjoint,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sigma, terms)
    }

    pub fn to_json(&self) -> GeneratorJson {
        GeneratorJson {
            sigma: OperatorJson::from_matrix(self.sigma.matrix()),
            terms: self
                .terms
                .iter()
                .map(|t| JumpTermJson {
                    v: OperatorJson::from_matrix(&t.v),
                    omega: t.omega,
                    adjoint: t.adjoint,
                })
                .collect(),
        }
    }
}

/// `rho_hat_j # C`: the Kubo-Mori operator with weights `exp(+-omega_j / 2)`.
pub fn weighted_fkm_apply(
    gen: &LindbladGenerator,
    j: usize,
    rho: &DensityOperator,
    c: &CMat,
    settings: &NumericSettings,
) -> Result<CMat> {
    rho.require_faithful(settings.faithful_eps)?;
    if j >= gen.terms().len() {
        return Err(Error::Size(format!(
            "term index {j} out of range for {} terms",
            gen.terms().len()
        )));
    }
    Ok(gen.multiplier(j, rho, settings).apply(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::kubo_mori_apply;

    #[test]
    fn damped_qubit_is_valid() {
        let g = LindbladGenerator::damped_qubit(0.3).unwrap();
        let r = g.validate();
        assert!(r.accepted(), "{r:?}");
        assert!(r.max_residual() < 1e-12);
    }

    #[test]
    fn zero_frequency_damping_rejected() {
        let g = LindbladGenerator::damped_qubit(0.3).unwrap();
        let mut terms = g.terms().to_vec();
        terms[0].omega = 0.0;
        terms[1].omega = 0.0;
        let bad = LindbladGenerator::new_unchecked(g.sigma().clone(), terms.clone());
        let report = bad.validate();
        assert!(!report.accepted());
        assert!(report
            .violations
            .iter()
            .any(|v| v.condition == Condition::ModularEigenvector && v.index == 0));
        assert!(matches!(
            LindbladGenerator::new(g.sigma().clone(), terms),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn fermionic_single_mode_heisenberg() {
        let alg = CliffordAlgebra::new(1).unwrap();
        let g = LindbladGenerator::fermionic(&alg);
        assert!(g.validate().accepted());
        let x = alg.generator(0).clone();
        let z = CMat::from_row_slice(
            2,
            2,
            &[1.0, 0.0, 0.0, -1.0].map(|r| Complex64::new(r, 0.0)),
        );
        assert!(g.apply(&x, Picture::Heisenberg).norm() < 1e-14);
        assert!((g.apply(&z, Picture::Heisenberg) + z.scale(4.0)).norm() < 1e-14);
        assert!(g.apply(&CMat::identity(2, 2), Picture::Heisenberg).norm() < 1e-14);
    }

    #[test]
    fn schroedinger_is_trace_dual() {
        let g = LindbladGenerator::damped_qubit(0.2).unwrap();
        let a = CMat::from_fn(2, 2, |i, j| Complex64::new(i as f64 + 0.5, j as f64 - 0.3));
        let b = CMat::from_fn(2, 2, |i, j| Complex64::new(j as f64 * 0.7, i as f64 + 0.1));
        let lhs = (g.apply(&a, Picture::Heisenberg) * &b).trace();
        let rhs = (&a * g.apply(&b, Picture::Schroedinger)).trace();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn invariant_state_is_stationary() {
        let g = LindbladGenerator::damped_qubit(0.35).unwrap();
        assert!(g.apply(g.sigma().matrix(), Picture::Schroedinger).norm() < 1e-14);
    }

    #[test]
    fn weighted_reduces_at_zero_frequency() {
        let alg = CliffordAlgebra::new(1).unwrap();
        let g = LindbladGenerator::fermionic(&alg);
        let rho = DensityOperator::new(
            HermitianOperator::from_real(&DMatrix::from_row_slice(2, 2, &[0.6, 0.1, 0.1, 0.4]))
                .unwrap(),
            TraceConvention::Standard,
        )
        .unwrap();
        let c = CMat::from_fn(2, 2, |i, j| Complex64::new((i + j) as f64, 0.0));
        let s = NumericSettings::default();
        let a = weighted_fkm_apply(&g, 0, &rho, &c, &s).unwrap();
        let b = kubo_mori_apply(&rho, &rho, &c, false, &s).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn weighted_scalar_state() {
        let g = LindbladGenerator::damped_qubit(0.25).unwrap();
        let d = 2.0;
        let rho = DensityOperator::maximally_mixed(2, TraceConvention::Standard);
        let c = CMat::from_fn(2, 2, |i, j| Complex64::new(i as f64 - j as f64, 1.0));
        let s = NumericSettings::default();
        let w = g.terms()[0].omega;
        let factor = ((0.5 * w).exp() - (-0.5 * w).exp()) / (d * w);
        let out = weighted_fkm_apply(&g, 0, &rho, &c, &s).unwrap();
        assert!((out - c.scale(factor)).norm() < 1e-13);
    }

    #[test]
    fn json_round_trip() {
        let g = LindbladGenerator::damped_qubit(0.4).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back: GeneratorJson = serde_json::from_str(&text).unwrap();
        let g2 = LindbladGenerator::from_json(&back, &NumericSettings::default()).unwrap();
        assert_eq!(g2.terms(), g.terms());
    }
}
