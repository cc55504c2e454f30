// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use super::path::{optimize_path, OptimizerConfig, PathProblem, PathSolution};
use super::FlowTrajectory;
use crate::metric::InformationMetric;
use crate::{Error, NumericSettings, Result};

/// Left-point discretized action `N sum_k <dtheta_k, G(theta_k) dtheta_k>`.
pub struct MetricPathProblem<'a, M: InformationMetric + ?Sized> {
    metric: &'a M,
    segments: usize,
    settings: NumericSettings,
}

impl<'a, M: InformationMetric + ?Sized> MetricPathProblem<'a, M> {
    pub fn new(metric: &'a M, segments: usize, settings: &NumericSettings) -> Self {
        Self {
            metric,
            segments,
            settings: settings.clone(),
        }
    }
}

impl<M: InformationMetric + ?Sized> PathProblem for MetricPathProblem<'_, M> {
    fn point_dim(&self) -> usize {
        self.metric.dim()
    }

    fn segments(&self) -> usize {
        self.segments
    }

    fn segment_cost(&self, _k: usize, a: &[f64], b: &[f64]) -> Result<f64> {
        let step = DVector::from_iterator(a.len(), b.iter().zip(a).map(|(y, x)| y - x));
        let g = self.metric.info_matrix(a, &self.settings)?;
        Ok(self.segments as f64 * step.dot(&(g * &step)))
    }

    fn feasible(&self, x: &[f64]) -> bool {
        self.metric.contains(x)
    }

    fn preconditioner_block(&self, _k: usize, x: &[f64]) -> Result<Option<DMatrix<f64>>> {
        Ok(Some(self.metric.info_matrix(x, &self.settings)? * self.segments as f64))
    }

    fn fd_step(&self, v: f64) -> f64 {
        self.settings.fd_step(v)
    }
}

/// Minimizing path with its optimizer record.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSolution {
    /// Times `k / N`, points, and cumulative action as diagnostics.
    pub trajectory: FlowTrajectory,
    pub action: f64,
    pub action_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl GeodesicSolution {
    pub(crate) fn from_path<P: PathProblem + ?Sized>(problem: &P, sol: PathSolution) -> Result<Self> {
        let n = sol.path.len() - 1;
        let mut diagnostics = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        diagnostics.push(0.0);
        for k in 0..n {
            acc += problem.segment_cost(k, &sol.path[k], &sol.path[k + 1])?;
            diagnostics.push(acc);
        }
        Ok(Self {
            trajectory: FlowTrajectory {
                times: (0..=n).map(|k| k as f64 / n as f64).collect(),
                thetas: sol.path,
                diagnostics,
                exited: false,
            },
            action: sol.action,
            action_trace: sol.action_trace,
            iterations: sol.iterations,
            converged: sol.converged,
        })
    }
}

/// Geodesic between `theta0` and `theta1` with `n` segments.
pub fn geodesic_bvp<M: InformationMetric + ?Sized>(
    metric: &M,
    theta0: &[f64],
    theta1: &[f64],
    n: usize,
    config: &OptimizerConfig,
    settings: &NumericSettings,
) -> Result<GeodesicSolution> {
    for theta in [theta0, theta1] {
        if theta.len() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: theta.len(),
            });
        }
        if !metric.contains(theta) {
            return Err(Error::Boundary {
                theta: theta.to_vec(),
            });
        }
    }
    if n == 0 {
        return Err(Error::Size("a geodesic needs at least one segment".into()));
    }
    let problem = MetricPathProblem::new(metric, n, settings);
    let sol = optimize_path(&problem, theta0, theta1, config)?;
    GeodesicSolution::from_path(&problem, sol)
}

/// `G'(theta) theta'^2 + 2 G(theta) theta''` at interior nodes of a
/// uniformly sampled one-parameter path, with centred differences.
pub fn euler_lagrange_residual<M: InformationMetric + ?Sized>(
    metric: &M,
    thetas: &[f64],
    settings: &NumericSettings,
) -> Result<Vec<f64>> {
    if metric.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: metric.dim(),
        });
    }
    let n = thetas.len().saturating_sub(1);
    if n < 2 {
        return Ok(Vec::new());
    }
    let h = 1.0 / n as f64;
    let g = |x: f64| -> Result<f64> { Ok(metric.info_matrix(&[x], settings)?[(0, 0)]) };
    (1..n)
        .map(|k| {
            let x = thetas[k];
            let v = (thetas[k + 1] - thetas[k - 1]) / (2.0 * h);
            let a = (thetas[k + 1] - 2.0 * x + thetas[k - 1]) / (h * h);
            let d = settings.fd_step(x);
            let dg = (g(x + d)? - g(x - d)?) / (2.0 * d);
            Ok(dg * v * v + 2.0 * g(x)? * a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FermionicQubit;

    #[test]
    fn constant_endpoints_give_zero_action() {
        let s = NumericSettings::default();
        let sol = geodesic_bvp(
            &FermionicQubit::kubo_mori(),
            &[0.3],
            &[0.3],
            10,
            &OptimizerConfig::default(),
            &s,
        )
        .unwrap();
        assert_eq!(sol.action, 0.0);
        assert!(sol.trajectory.thetas.iter().all(|t| t[0] == 0.3));
    }

    #[test]
    fn endpoints_must_be_in_domain() {
        let s = NumericSettings::default();
        assert!(matches!(
            geodesic_bvp(
                &FermionicQubit::kubo_mori(),
                &[-1.0],
                &[0.5],
                10,
                &OptimizerConfig::default(),
                &s
            ),
            Err(Error::Boundary { .. })
        ));
    }
}
