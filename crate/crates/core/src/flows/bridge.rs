// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum Schrödinger bridge on a path of density operators.
//!
//! States are coordinatized by their components along the traceless part of
//! the structure's orthonormal self-adjoint basis; the identity component is
//! fixed by the endpoints. Segment `k` costs
//! `dt (<nabla Phi_k, L nabla Phi_k> + beta^2 I(rho_bar_k))` where `rho_bar_k`
//! is the midpoint state and `-Delta_(rho_bar_k) Phi_k = (rho_(k+1) - rho_k) / dt`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::path::{optimize_path, OptimizerConfig, PathProblem};
use crate::lindblad::{fisher_information, relative_entropy, Structure, TransportLaplacian};
use crate::operator::{CMat, DensityOperator, HermitianOperator, OperatorVector};
use crate::{Error, NumericSettings, Result};

/// Discretized bridge problem between two faithful states.
pub struct BridgeProblem<'a> {
    structure: &'a Structure,
    sigma: DensityOperator,
    beta: f64,
    segments: usize,
    identity_part: CMat,
    settings: NumericSettings,
}

impl<'a> BridgeProblem<'a> {
    pub fn new(
        structure: &'a Structure,
        rho_in: &DensityOperator,
        beta: f64,
        segments: usize,
        settings: &NumericSettings,
    ) -> Result<Self> {
        if !(beta >= 0.0) {
            return Err(Error::Domain(format!("beta must be nonnegative, got {beta}")));
        }
        if segments == 0 {
            return Err(Error::Size("a bridge needs at least one segment".into()));
        }
        let basis = structure.basis();
        let c0 = basis.convention().inner(basis.element(0), rho_in.matrix());
        Ok(Self {
            structure,
            sigma: structure.invariant_state(),
            beta,
            segments,
            identity_part: basis.element(0).scale(c0.re),
            settings: settings.clone(),
        })
    }

    /// Traceless coordinates of `rho`.
    pub fn coordinates(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        let basis = self.structure.basis();
        let coeffs = basis.expand(rho.matrix(), self.settings.expansion_tol)?;
        let back = basis.element(0).scale(coeffs[0].re);
        if (back - &self.identity_part).iter().any(|z| z.norm() > 1e-12) {
            return Err(Error::Precondition(
                "bridge endpoints must have the same trace".into(),
            ));
        }
        Ok(coeffs.iter().skip(1).map(|z| z.re).collect())
    }

    pub fn matrix(&self, x: &[f64]) -> CMat {
        let basis = self.structure.basis();
        let mut m = self.identity_part.clone();
        for (b, &v) in basis.elements().iter().skip(1).zip(x) {
            m += b.scale(v);
        }
        m
    }

    pub fn state(&self, x: &[f64]) -> Result<DensityOperator> {
        let h = HermitianOperator::with_tolerance(self.matrix(x), 1e-10)?;
        DensityOperator::unnormalized(h, self.structure.convention())
    }

    fn floor(&self) -> f64 {
        self.settings.faithful_eps
    }

    /// Transport part `<nabla Phi, L nabla Phi>` and Fisher information at
    /// the midpoint of a segment, without the `dt` factor.
    pub fn segment_terms(&self, a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
        let n = self.segments as f64;
        let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
        let rho = self.state(&mid)?;
        rho.require_faithful(self.floor())?;
        let rate = (self.matrix(b) - self.matrix(a)).scale(n);
        let transport = if rate.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
            0.0
        } else {
            let lap = TransportLaplacian::build(&rho, self.structure, &self.settings)?;
            let phi = lap.solve(&rate, &self.settings)?;
            self.structure.at(&rho, &self.settings)?.energy(&phi, &phi)?.re
        };
        let fisher = if self.beta > 0.0 {
            fisher_information(&rho, &self.sigma, self.structure, &self.settings)?
        } else {
            0.0
        };
        Ok((transport, fisher))
    }
}

impl PathProblem for BridgeProblem<'_> {
    fn point_dim(&self) -> usize {
        self.structure.basis().len() - 1
    }

    fn segments(&self) -> usize {
        self.segments
    }

    fn segment_cost(&self, _k: usize, a: &[f64], b: &[f64]) -> Result<f64> {
        let (transport, fisher) = self.segment_terms(a, b)?;
        Ok((transport + self.beta * self.beta * fisher) / self.segments as f64)
    }

    fn feasible(&self, x: &[f64]) -> bool {
        self.state(x)
            .map(|s| s.min_eigenvalue() >= self.floor())
            .unwrap_or(false)
    }

    fn project(&self, x: &mut [f64]) -> bool {
        for _ in 0..5 {
            let Ok(rho) = self.state(x) else {
                return false;
            };
            if rho.min_eigenvalue() >= self.floor() {
                return true;
            }
            let floor = 2.0 * self.floor();
            let clipped = rho.spectrum().map(|v| v.max(floor));
            let basis = self.structure.basis();
            let coeffs = basis.coefficients(&clipped);
            for (xi, c) in x.iter_mut().zip(coeffs.iter().skip(1)) {
                *xi = c.re;
            }
        }
        self.feasible(x)
    }

    fn preconditioner_block(&self, _k: usize, x: &[f64]) -> Result<Option<DMatrix<f64>>> {
        let rho = self.state(x)?;
        let lap = TransportLaplacian::build(&rho, self.structure, &self.settings)?;
        let p = &lap.pseudo_inverse().matrix;
        let d = self.point_dim();
        Ok(Some(DMatrix::from_fn(d, d, |i, j| p[(i + 1, j + 1)].re) * self.segments as f64))
    }

    fn fd_step(&self, v: f64) -> f64 {
        self.settings.fd_step(v)
    }
}

/// Optimized bridge between two states.
#[derive(Debug, Clone)]
pub struct BridgePath {
    pub states: Vec<DensityOperator>,
    pub beta: f64,
    /// `sum_k dt (||M_k||^2 + beta^2 I(rho_bar_k))`.
    pub functional_value: f64,
    /// Transport part of the functional.
    pub transport_cost: f64,
    /// `sum_k dt I(rho_bar_k)`.
    pub fisher_cost: f64,
    /// `2 beta (S_sigma(rho_fi) - S_sigma(rho_in))`.
    pub entropy_term: f64,
    /// Traceless coordinates of every state.
    pub coordinates: Vec<Vec<f64>>,
    /// Functional contribution of each segment.
    pub segment_costs: Vec<f64>,
    pub action_trace: Vec<f64>,
    pub converged: bool,
}

impl BridgePath {
    /// Wraps an arbitrary sampled path (for the equivalence check).
    pub fn from_states(states: Vec<DensityOperator>, beta: f64) -> Self {
        Self {
            states,
            beta,
            functional_value: f64::NAN,
            transport_cost: f64::NAN,
            fisher_cost: f64::NAN,
            entropy_term: f64::NAN,
            coordinates: Vec::new(),
            segment_costs: Vec::new(),
            action_trace: Vec::new(),
            converged: false,
        }
    }

    pub fn segments(&self) -> usize {
        self.states.len().saturating_sub(1)
    }
}

/// Minimizes the bridge functional between `rho_in` and `rho_fi`.
pub fn sbp_solve(
    structure: &Structure,
    rho_in: &DensityOperator,
    rho_fi: &DensityOperator,
    beta: f64,
    n: usize,
    config: &OptimizerConfig,
    settings: &NumericSettings,
) -> Result<BridgePath> {
    for rho in [rho_in, rho_fi] {
        rho.require_faithful(settings.faithful_eps)?;
        if rho.convention() != structure.convention() || rho.dim() != structure.dim() {
            return Err(Error::Precondition(
                "states must match the structure's dimension and trace convention".into(),
            ));
        }
    }
    let problem = BridgeProblem::new(structure, rho_in, beta, n, settings)?;
    let x0 = problem.coordinates(rho_in)?;
    let x1 = problem.coordinates(rho_fi)?;
    let sol = optimize_path(&problem, &x0, &x1, config)?;
    let mut transport = 0.0;
    let mut fisher = 0.0;
    let mut segment_costs = Vec::with_capacity(n);
    for w in sol.path.windows(2) {
        let (t, f) = problem.segment_terms(&w[0], &w[1])?;
        transport += t / n as f64;
        fisher += f / n as f64;
        segment_costs.push((t + beta * beta * f) / n as f64);
    }
    let sigma = structure.invariant_state();
    let entropy_term = 2.0
        * beta
        * (relative_entropy(rho_fi, &sigma, settings)? - relative_entropy(rho_in, &sigma, settings)?);
    let mut states = Vec::with_capacity(n + 1);
    states.push(rho_in.clone());
    for x in &sol.path[1..n] {
        states.push(problem.state(x)?);
    }
    states.push(rho_fi.clone());
    Ok(BridgePath {
        states,
        beta,
        functional_value: sol.action,
        transport_cost: transport,
        fisher_cost: fisher,
        entropy_term,
        coordinates: sol.path,
        segment_costs,
        action_trace: sol.action_trace,
        converged: sol.converged,
    })
}

/// Both sides of
/// `int ||m||^2 = int (||M||^2 + beta^2 I) + 2 beta (S(rho_fi) - S(rho_in))`
/// evaluated with left-node quadrature on a sampled path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`.
    pub residual: f64,
    /// `sum_k dt 2 beta <nabla Phi_k, L nabla X_k>`.
    pub cross_term: f64,
    /// `S_sigma(rho_fi) - S_sigma(rho_in)`.
    pub entropy_difference: f64,
}

/// Evaluates the bridge identity on `path` with `m = M + beta L nabla X`,
/// `X = log rho - log sigma`.
pub fn sbp_equivalence_check(
    path: &BridgePath,
    sigma: &DensityOperator,
    beta: f64,
    structure: &Structure,
    settings: &NumericSettings,
) -> Result<EquivalenceReport> {
    let n = path.segments();
    if n == 0 {
        return Err(Error::Size("path needs at least two states".into()));
    }
    let dt = 1.0 / n as f64;
    let conv = structure.convention();
    let log_sigma = sigma.log()?.into_matrix();
    let mut lhs = 0.0;
    let mut transport = 0.0;
    let mut fisher = 0.0;
    let mut cross = 0.0;
    for k in 0..n {
        let rho = &path.states[k];
        let rate = (path.states[k + 1].matrix() - rho.matrix()).scale(1.0 / dt);
        let lap = TransportLaplacian::build(rho, structure, settings)?;
        let phi = lap.solve(&rate, settings)?;
        let x = rho.log()?.into_matrix() - &log_sigma;
        let local = structure.at(rho, settings)?;
        let grad_phi = structure.gradient(&phi)?;
        let grad_x = structure.gradient(&x)?;
        let big_m = local.multiply(&grad_phi);
        let lx = local.multiply(&grad_x);
        let m = OperatorVector::new(
            big_m
                .components
                .iter()
                .zip(&lx.components)
                .map(|(a, b)| a + b.scale(beta))
                .collect(),
        );
        lhs += dt * m.inner(&local.multiply_inverse(&m), conv).re;
        transport += dt * grad_phi.inner(&big_m, conv).re;
        fisher += dt * grad_x.inner(&lx, conv).re;
        cross += dt * 2.0 * beta * grad_phi.inner(&lx, conv).re;
    }
    let entropy_difference = relative_entropy(&path.states[n], sigma, settings)?
        - relative_entropy(&path.states[0], sigma, settings)?;
    let rhs = transport + beta * beta * fisher + 2.0 * beta * entropy_difference;
    Ok(EquivalenceReport {
        lhs,
        rhs,
        residual: lhs - rhs,
        cross_term: cross,
        entropy_difference,
    })
}
