// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;

use super::FlowTrajectory;
use crate::lindblad::relative_entropy;
use crate::metric::{InformationMetric, ParametricModel};
use crate::operator::DensityOperator;
use crate::{Error, NumericSettings, Result};

const MAX_HALVINGS: usize = 30;

/// Scalar objective on parameter space.
pub trait Objective: Sync {
    fn value(&self, theta: &[f64]) -> Result<f64>;

    /// Closed-form gradient, when available.
    fn gradient(&self, _theta: &[f64]) -> Option<Result<Vec<f64>>> {
        None
    }
}

type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// Objective given by closures.
pub struct FnObjective {
    value: Box<ValueFn>,
    gradient: Option<Box<GradientFn>>,
}

impl FnObjective {
    pub fn new(value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            value: Box::new(value),
            gradient: None,
        }
    }

    pub fn with_gradient(mut self, gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.gradient = Some(Box::new(gradient));
        self
    }
}

impl Objective for FnObjective {
    fn value(&self, theta: &[f64]) -> Result<f64> {
        Ok((self.value)(theta))
    }

    fn gradient(&self, theta: &[f64]) -> Option<Result<Vec<f64>>> {
        self.gradient.as_ref().map(|g| Ok(g(theta)))
    }
}

/// `R(theta) = S_sigma(rho(theta))`.
pub struct RelativeEntropyObjective<'a, M: ParametricModel + ?Sized> {
    model: &'a M,
    sigma: DensityOperator,
    settings: NumericSettings,
}

impl<'a, M: ParametricModel + ?Sized> RelativeEntropyObjective<'a, M> {
    pub fn new(model: &'a M, sigma: DensityOperator, settings: &NumericSettings) -> Self {
        Self {
            model,
            sigma,
            settings: settings.clone(),
        }
    }

    /// Relative entropy to the structure's invariant state; for the fermionic
    /// calculus this is `tau(rho log rho)`.
    pub fn to_invariant(model: &'a M, settings: &NumericSettings) -> Self {
        Self::new(model, model.structure().invariant_state(), settings)
    }
}

impl<M: ParametricModel + ?Sized> Objective for RelativeEntropyObjective<'_, M> {
    fn value(&self, theta: &[f64]) -> Result<f64> {
        relative_entropy(&self.model.state(theta)?, &self.sigma, &self.settings)
    }
}

/// `D_theta R`, analytic when the objective provides it and by central
/// differences otherwise.
pub fn objective_gradient<M: InformationMetric + ?Sized>(
    metric: &M,
    objective: &dyn Objective,
    theta: &[f64],
    settings: &NumericSettings,
) -> Result<Vec<f64>> {
    if let Some(g) = objective.gradient(theta) {
        return g;
    }
    let mut out = Vec::with_capacity(theta.len());
    for i in 0..theta.len() {
        let mut h = settings.fd_step(theta[i]);
        let mut halvings = 0;
        let (plus, minus) = loop {
            let mut p = theta.to_vec();
            let mut m = theta.to_vec();
            p[i] += h;
            m[i] -= h;
            if metric.contains(&p) && metric.contains(&m) {
                break (p, m);
            }
            halvings += 1;
            if halvings > MAX_HALVINGS {
                return Err(Error::Boundary {
                    theta: theta.to_vec(),
                });
            }
            h *= 0.5;
        };
        out.push((objective.value(&plus)? - objective.value(&minus)?) / (2.0 * h));
    }
    Ok(out)
}

/// `-G_W(theta)^-1 G_theta D_theta R(theta)`.
pub fn natural_gradient_direction<M: InformationMetric + ?Sized>(
    metric: &M,
    objective: &dyn Objective,
    theta: &[f64],
    settings: &NumericSettings,
) -> Result<Vec<f64>> {
    let g = metric.info_matrix(theta, settings)?;
    let dr = DVector::from_vec(objective_gradient(metric, objective, theta, settings)?);
    let rhs = metric.param_metric_at(theta) * dr;
    let sol = g
        .clone()
        .cholesky()
        .map(|c| c.solve(&rhs))
        .or_else(|| g.lu().solve(&rhs))
        .ok_or_else(|| Error::Precondition("information matrix is singular".into()))?;
    Ok(sol.iter().map(|x| -x).collect())
}

/// Forward Euler for `theta' = -G_W^-1 G_theta D R`.
///
/// A step leaving the domain is halved up to 30 times; diagnostics hold
/// `R(theta_k)`.
pub fn natural_gradient_flow<M: InformationMetric + ?Sized>(
    metric: &M,
    theta0: &[f64],
    objective: &dyn Objective,
    tau: f64,
    n_steps: usize,
    settings: &NumericSettings,
) -> Result<FlowTrajectory> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("step size must be positive, got {tau}")));
    }
    if theta0.len() != metric.dim() || !metric.contains(theta0) {
        return Err(Error::Boundary {
            theta: theta0.to_vec(),
        });
    }
    let mut theta = theta0.to_vec();
    let mut t = 0.0;
    let mut traj = FlowTrajectory {
        times: vec![0.0],
        thetas: vec![theta.clone()],
        diagnostics: vec![objective.value(&theta)?],
        exited: false,
    };
    for step in 1..=n_steps {
        let d = natural_gradient_direction(metric, objective, &theta, settings)?;
        let mut h = tau;
        let mut halvings = 0;
        let next = loop {
            let cand: Vec<f64> = theta.iter().zip(&d).map(|(x, v)| x + h * v).collect();
            if metric.contains(&cand) {
                break cand;
            }
            halvings += 1;
            if halvings > MAX_HALVINGS {
                return Err(Error::DomainExit {
                    step,
                    theta: theta.clone(),
                });
            }
            h *= 0.5;
        };
        theta = next;
        t += h;
        traj.times.push(t);
        traj.diagnostics.push(objective.value(&theta)?);
        traj.thetas.push(theta.clone());
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FermionicQubit;

    #[test]
    fn entropy_direction_is_minus_theta() {
        let s = NumericSettings::default();
        let m = FermionicQubit::kubo_mori();
        let r = RelativeEntropyObjective::to_invariant(&m, &s);
        for theta in [-0.9, -0.2, 0.4, 0.8] {
            let d = natural_gradient_direction(&m, &r, &[theta], &s).unwrap();
            assert!((d[0] + theta).abs() < 1e-8, "{theta}: {}", d[0]);
        }
    }

    #[test]
    fn constant_objective_is_stationary() {
        let s = NumericSettings::default();
        let m = FermionicQubit::kubo_mori();
        let r = FnObjective::new(|_| 2.5);
        let traj = natural_gradient_flow(&m, &[0.6], &r, 0.1, 5, &s).unwrap();
        assert!(traj.thetas.iter().all(|t| t[0] == 0.6));
    }

    #[test]
    fn exit_after_repeated_halving() {
        let s = NumericSettings::default();
        let m = FermionicQubit::anticommutator();
        let push = FnObjective::new(|t| -t[0]).with_gradient(|_| vec![-1.0]);
        let err = natural_gradient_flow(&m, &[0.99], &push, 0.5, 100, &s).unwrap_err();
        assert!(matches!(err, Error::DomainExit { .. }));
    }
}
