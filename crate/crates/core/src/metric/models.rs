// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use nalgebra::DMatrix;

use super::{InformationMetric, ParametricModel};
use crate::clifford::CliffordAlgebra;
use crate::gaussian::GaussianModel;
use crate::lindblad::{Multiplier, Structure};
use crate::operator::{CMat, DensityOperator, HermitianOperator, TraceConvention};
use crate::{Error, Result};

/// `artanh(x) / x`, with its Taylor series near zero.
pub fn artanh_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 3.0 + x2 * x2 / 5.0
    } else {
        x.atanh() / x
    }
}

/// Single-mode fermionic family `rho(theta) = id + theta sigma_x`,
/// `|theta| <= 1 - 1e-6`, under the normalized trace.
#[derive(Debug, Clone)]
pub struct FermionicQubit {
    structure: Structure,
    name: &'static str,
}

impl FermionicQubit {
    pub const BOUND: f64 = 1.0 - 1e-6;

    pub fn new(multiplier: Multiplier) -> Self {
        let alg = Arc::new(CliffordAlgebra::new(1).expect("one mode is supported"));
        let name = match multiplier {
            Multiplier::KuboMori => "fermionic-n1",
            Multiplier::AntiCommutator => "fermionic-n1-ac",
        };
        Self {
            structure: Structure::fermionic(alg, multiplier),
            name,
        }
    }

    pub fn kubo_mori() -> Self {
        Self::new(Multiplier::KuboMori)
    }

    pub fn anticommutator() -> Self {
        Self::new(Multiplier::AntiCommutator)
    }

    pub fn multiplier(&self) -> Multiplier {
        self.structure.multiplier
    }

    fn sigma_x() -> CMat {
        CMat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(crate::operator::c))
    }

    /// `id + theta sigma_x` without a domain check.
    pub fn state_matrix(theta: f64) -> CMat {
        CMat::identity(2, 2) + Self::sigma_x().scale(theta)
    }

    /// Exact scalar information: `artanh(theta) / theta` for Kubo-Mori and
    /// one for the anticommutator.
    pub fn exact(&self, theta: f64) -> f64 {
        match self.multiplier() {
            Multiplier::KuboMori => artanh_over_x(theta),
            Multiplier::AntiCommutator => 1.0,
        }
    }
}

impl ParametricModel for FermionicQubit {
    fn name(&self) -> &str {
        self.name
    }

    fn num_params(&self) -> usize {
        1
    }

    fn in_domain(&self, theta: &[f64]) -> bool {
        theta.len() == 1 && theta[0].is_finite() && theta[0].abs() <= Self::BOUND
    }

    fn state(&self, theta: &[f64]) -> Result<DensityOperator> {
        if !self.in_domain(theta) {
            return Err(Error::Boundary {
                theta: theta.to_vec(),
            });
        }
        DensityOperator::new(
            HermitianOperator::new(Self::state_matrix(theta[0]))?,
            TraceConvention::Normalized,
        )
    }

    fn structure(&self) -> &Structure {
        &self.structure
    }

    fn analytic_derivative(&self, _theta: &[f64]) -> Option<Vec<CMat>> {
        Some(vec![Self::sigma_x()])
    }

    fn closed_form(&self, theta: &[f64]) -> Option<DMatrix<f64>> {
        Some(DMatrix::from_element(1, 1, self.exact(theta[0])))
    }
}

/// Output of a depolarizing channel on the two-mode fermionic algebra,
/// `Phi_theta = (e^-theta Q^(1,0) + (1 - e^-theta) Q^(0,1) + id) / 2`,
/// with the anticommutator structure.
///
/// The normalized trace of `Phi_theta` is one half; it is kept as is.
#[derive(Debug, Clone)]
pub struct DepolarizingChannel {
    alg: Arc<CliffordAlgebra>,
    structure: Structure,
}

impl Default for DepolarizingChannel {
    fn default() -> Self {
        Self::new()
    }
}

impl DepolarizingChannel {
    pub fn new() -> Self {
        let alg = Arc::new(CliffordAlgebra::new(2).expect("two modes are supported"));
        Self {
            structure: Structure::fermionic(alg.clone(), Multiplier::AntiCommutator),
            alg,
        }
    }

    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        &self.alg
    }

    /// `Q^(1,0)`, `Q^(0,1)`, `Q^(1,1)`.
    pub fn off_identity_elements(&self) -> [CMat; 3] {
        [
            self.alg.element(0b10).clone(),
            self.alg.element(0b01).clone(),
            self.alg.element(0b11).clone(),
        ]
    }

    pub fn state_matrix(&self, theta: f64) -> CMat {
        let e = (-theta).exp();
        let [q10, q01, _] = self.off_identity_elements();
        (q10.scale(e) + q01.scale(1.0 - e) + CMat::identity(4, 4)).scale(0.5)
    }

    /// Smallest eigenvalue, `(1 - sqrt(a^2 + b^2)) / 2` with `a = e^-theta`,
    /// `b = 1 - a`.
    pub fn min_eigenvalue(theta: f64) -> f64 {
        let a = (-theta).exp();
        let b = 1.0 - a;
        0.5 * (1.0 - a.hypot(b))
    }

    /// `(3 + 4e^-theta - 4e^-2theta) / (2 (e^2theta + 2e^theta - 2))`.
    pub fn exact(theta: f64) -> f64 {
        let (em, e) = ((-theta).exp(), theta.exp());
        (3.0 + 4.0 * em - 4.0 * em * em) / (2.0 * (e * e + 2.0 * e - 2.0))
    }

    /// Matrix of `-Delta` on `(Q^(1,0), Q^(0,1), Q^(1,1))`.
    pub fn exact_laplacian(theta: f64) -> DMatrix<f64> {
        let e = (-theta).exp();
        DMatrix::from_row_slice(
            3,
            3,
            &[1.0, 0.0, 1.0 - e, 0.0, 1.0, -e, 1.0 - e, -e, 2.0],
        )
        .scale(0.5)
    }
}

impl ParametricModel for DepolarizingChannel {
    fn name(&self) -> &str {
        "depolarizing-n2"
    }

    fn num_params(&self) -> usize {
        1
    }

    fn in_domain(&self, theta: &[f64]) -> bool {
        theta.len() == 1 && theta[0].is_finite() && theta[0] > 0.0 && Self::min_eigenvalue(theta[0]) > 1e-9
    }

    fn state(&self, theta: &[f64]) -> Result<DensityOperator> {
        if !self.in_domain(theta) {
            return Err(Error::Boundary {
                theta: theta.to_vec(),
            });
        }
        DensityOperator::unnormalized(
            HermitianOperator::new(self.state_matrix(theta[0]))?,
            TraceConvention::Normalized,
        )
    }

    fn structure(&self) -> &Structure {
        &self.structure
    }

    fn analytic_derivative(&self, theta: &[f64]) -> Option<Vec<CMat>> {
        let [q10, q01, _] = self.off_identity_elements();
        Some(vec![(q01 - q10).scale(0.5 * (-theta[0]).exp())])
    }

    fn closed_form(&self, theta: &[f64]) -> Option<DMatrix<f64>> {
        Some(DMatrix::from_element(1, 1, Self::exact(theta[0])))
    }
}

/// Names accepted by [`RegisteredModel::lookup`].
pub const MODEL_NAMES: [&str; 4] = ["fermionic-n1", "fermionic-n1-ac", "depolarizing-n2", "gaussian"];

/// Built-in models selectable by name.
#[derive(Debug, Clone)]
pub enum RegisteredModel {
    Fermionic(FermionicQubit),
    Depolarizing(DepolarizingChannel),
    Gaussian(GaussianModel),
}

impl RegisteredModel {
    pub fn lookup(name: &str) -> Result<Self> {
        Ok(match name {
            "fermionic-n1" => Self::Fermionic(FermionicQubit::kubo_mori()),
            "fermionic-n1-ac" => Self::Fermionic(FermionicQubit::anticommutator()),
            "depolarizing-n2" => Self::Depolarizing(DepolarizingChannel::new()),
            "gaussian" => Self::Gaussian(GaussianModel::new(1)),
            other => return Err(Error::UnknownModel(other.to_string())),
        })
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Fermionic(m) => m.name(),
            Self::Depolarizing(m) => m.name(),
            Self::Gaussian(_) => "gaussian",
        }
    }

    pub fn metric(&self) -> &dyn InformationMetric {
        match self {
            Self::Fermionic(m) => m,
            Self::Depolarizing(m) => m,
            Self::Gaussian(m) => m,
        }
    }

    /// Exact information matrix where one is known.
    pub fn reference(&self, theta: &[f64]) -> Option<DMatrix<f64>> {
        match self {
            Self::Fermionic(m) => m.closed_form(theta),
            Self::Depolarizing(m) => m.closed_form(theta),
            Self::Gaussian(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{model_derivative, wasserstein_info_matrix};
    use crate::NumericSettings;

    #[test]
    fn series_matches_near_zero() {
        for x in [1e-5, -3e-5, 9.9e-5_f64] {
            assert!((artanh_over_x(x) - x.atanh() / x).abs() < 1e-15);
        }
        assert_eq!(artanh_over_x(0.0), 1.0);
    }

    #[test]
    fn fermionic_matrix_at_half() {
        let s = NumericSettings::default();
        let g = wasserstein_info_matrix(&FermionicQubit::kubo_mori(), &[0.5], &s).unwrap();
        assert!((g.matrix[(0, 0)] - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn depolarizing_derivative_by_differences() {
        let s = NumericSettings::default();
        let m = DepolarizingChannel::new();
        struct Numeric<'a>(&'a DepolarizingChannel);
        impl ParametricModel for Numeric<'_> {
            fn name(&self) -> &str {
                "numeric"
            }
            fn num_params(&self) -> usize {
                1
            }
            fn in_domain(&self, t: &[f64]) -> bool {
                self.0.in_domain(t)
            }
            fn state(&self, t: &[f64]) -> Result<DensityOperator> {
                self.0.state(t)
            }
            fn structure(&self) -> &Structure {
                self.0.structure()
            }
        }
        for theta in [0.1, 0.5, 1.0, 2.0] {
            let a = model_derivative(&m, &[theta], &s).unwrap();
            let n = model_derivative(&Numeric(&m), &[theta], &s).unwrap();
            assert!((&a[0] - &n[0]).iter().all(|z| z.norm() < 1e-8));
        }
    }

    #[test]
    fn unknown_model() {
        assert!(matches!(
            RegisteredModel::lookup("nope"),
            Err(Error::UnknownModel(_))
        ));
        for name in MODEL_NAMES {
            assert_eq!(RegisteredModel::lookup(name).unwrap().name(), name);
        }
    }
}
