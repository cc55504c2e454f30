// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;

use super::metric::GaussianModel;
use super::state::{admissibility_margins, GaussianState};
use crate::flows::{optimize_path, GeodesicSolution, OptimizerConfig, PathProblem};
use crate::metric::InformationMetric;
use crate::{Error, NumericSettings, Result};

/// Discretized Gaussian action
/// `N sum_k (|mu_(k+1) - mu_k|^2 + tr(S_k Sigma_k S_k))`, with
/// `S_k Sigma_k + Sigma_k S_k = Sigma_(k+1) - Sigma_k`.
pub struct GaussianPathProblem {
    model: GaussianModel,
    segments: usize,
    settings: NumericSettings,
}

impl GaussianPathProblem {
    pub fn new(model: GaussianModel, segments: usize, settings: &NumericSettings) -> Self {
        Self {
            model,
            segments,
            settings: settings.clone(),
        }
    }

    pub fn model(&self) -> &GaussianModel {
        &self.model
    }
}

impl PathProblem for GaussianPathProblem {
    fn point_dim(&self) -> usize {
        self.model.num_params()
    }

    fn segments(&self) -> usize {
        self.segments
    }

    fn segment_cost(&self, _k: usize, a: &[f64], b: &[f64]) -> Result<f64> {
        let delta: Vec<f64> = b.iter().zip(a).map(|(y, x)| y - x).collect();
        Ok(self.segments as f64 * self.model.quadratic_form(a, &delta)?)
    }

    fn feasible(&self, x: &[f64]) -> bool {
        self.model.contains(x)
    }

    /// Clips the spectrum of `Sigma`, then shifts it by the deficit of
    /// `Sigma + i nu`.
    fn project(&self, x: &mut [f64]) -> bool {
        let Ok((mu, sigma)) = self.model.split(x) else {
            return false;
        };
        let sym = (&sigma + sigma.transpose()) * 0.5;
        let eig = sym.symmetric_eigen();
        let floor = 1e-9;
        let clipped = eig.eigenvalues.map(|v| v.max(floor));
        let mut sigma: DMatrix<f64> =
            &eig.eigenvectors * DMatrix::from_diagonal(&clipped) * eig.eigenvectors.transpose();
        let (_, min_h) = admissibility_margins(&sigma);
        if min_h < 0.0 {
            let n = sigma.nrows();
            sigma += DMatrix::identity(n, n) * (-min_h + 1e-12);
        }
        let sigma = (&sigma + sigma.transpose()) * 0.5;
        let theta = self.model.to_theta(&mu, &sigma);
        x.copy_from_slice(&theta);
        self.feasible(x)
    }

    fn preconditioner_block(&self, _k: usize, x: &[f64]) -> Result<Option<DMatrix<f64>>> {
        Ok(Some(self.model.info_matrix(x, &self.settings)? * self.segments as f64))
    }

    fn fd_step(&self, v: f64) -> f64 {
        self.settings.fd_step(v)
    }
}

/// Constrained geodesic between two Gaussian states with `n` segments.
///
/// Every accepted iterate satisfies `Sigma > 0` and `Sigma + i nu >= 0`:
/// gradient mode projects candidates, Monte-Carlo mode rejects them.
pub fn gaussian_geodesic(
    start: &GaussianState,
    end: &GaussianState,
    n: usize,
    config: &OptimizerConfig,
    settings: &NumericSettings,
) -> Result<GeodesicSolution> {
    if start.modes() != end.modes() {
        return Err(Error::DimensionMismatch {
            expected: start.modes(),
            found: end.modes(),
        });
    }
    if n == 0 {
        return Err(Error::Size("a geodesic needs at least one segment".into()));
    }
    let model = GaussianModel::new(start.modes());
    let theta0 = model.to_theta(start.mu(), start.sigma());
    let theta1 = model.to_theta(end.mu(), end.sigma());
    let problem = GaussianPathProblem::new(model, n, settings);
    let sol = optimize_path(&problem, &theta0, &theta1, config)?;
    GeodesicSolution::from_path(&problem, sol)
}

