// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use super::state::{admissibility_margins, GaussianState};
use crate::metric::InformationMetric;
use crate::operator::lyapunov_solve;
use crate::{Error, NumericSettings, Result};

/// Tangent vector `(mu', Sigma')` with symmetric `Sigma'`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTangent {
    pub mu_dot: DVector<f64>,
    pub sigma_dot: DMatrix<f64>,
}

impl GaussianTangent {
    pub fn new(mu_dot: DVector<f64>, sigma_dot: DMatrix<f64>) -> Result<Self> {
        let n = mu_dot.len();
        if sigma_dot.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma_dot.nrows(),
            });
        }
        if (&sigma_dot - sigma_dot.transpose()).amax() > 1e-12 * sigma_dot.amax().max(1.0) {
            return Err(Error::Precondition("covariance tangent must be symmetric".into()));
        }
        let sigma_dot = (&sigma_dot + sigma_dot.transpose()) * 0.5;
        Ok(Self { mu_dot, sigma_dot })
    }
}

/// Transport metric at a fixed Gaussian state,
/// `g(xi, eta) = <mu_xi, mu_eta> + tr(S_xi Sigma S_eta)` where
/// `S Sigma + Sigma S = Sigma_xi`.
#[derive(Debug, Clone)]
pub struct GaussianMetric {
    sigma: DMatrix<f64>,
}

/// Metric evaluator at `state`.
pub fn gaussian_info_matrix(state: &GaussianState) -> GaussianMetric {
    GaussianMetric {
        sigma: state.sigma().clone(),
    }
}

impl GaussianMetric {
    /// Symmetric `S` with `S Sigma + Sigma S = sigma_dot`.
    pub fn lyapunov(&self, sigma_dot: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        lyapunov_solve(&self.sigma, sigma_dot)
    }

    pub fn inner(&self, xi: &GaussianTangent, eta: &GaussianTangent) -> Result<f64> {
        let n = self.sigma.nrows();
        if xi.mu_dot.len() != n || eta.mu_dot.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: xi.mu_dot.len().max(eta.mu_dot.len()),
            });
        }
        let sx = self.lyapunov(&xi.sigma_dot)?;
        let se = self.lyapunov(&eta.sigma_dot)?;
        Ok(xi.mu_dot.dot(&eta.mu_dot) + (sx * &self.sigma * se).trace())
    }

    pub fn norm_squared(&self, xi: &GaussianTangent) -> Result<f64> {
        self.inner(xi, xi)
    }
}

/// Gaussian family on `m` modes in coordinates
/// `theta = (mu_1, ..., mu_2m, Sigma_11, Sigma_12, ..., Sigma_2m2m)`
/// (upper triangle of `Sigma`, row by row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianModel {
    m: usize,
}

impl GaussianModel {
    pub fn new(m: usize) -> Self {
        assert!(m > 0, "a Gaussian model needs at least one mode");
        Self { m }
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    fn n(&self) -> usize {
        2 * self.m
    }

    /// Number of coordinates, `2m + m(2m + 1)`.
    pub fn num_params(&self) -> usize {
        let n = self.n();
        n + n * (n + 1) / 2
    }

    pub fn to_theta(&self, mu: &DVector<f64>, sigma: &DMatrix<f64>) -> Vec<f64> {
        let n = self.n();
        let mut out: Vec<f64> = mu.iter().copied().collect();
        for i in 0..n {
            for j in i..n {
                out.push(0.5 * (sigma[(i, j)] + sigma[(j, i)]));
            }
        }
        out
    }

    pub fn split(&self, theta: &[f64]) -> Result<(DVector<f64>, DMatrix<f64>)> {
        if theta.len() != self.num_params() {
            return Err(Error::DimensionMismatch {
                expected: self.num_params(),
                found: theta.len(),
            });
        }
        let n = self.n();
        let mu = DVector::from_column_slice(&theta[..n]);
        let mut sigma = DMatrix::zeros(n, n);
        let mut k = n;
        for i in 0..n {
            for j in i..n {
                sigma[(i, j)] = theta[k];
                sigma[(j, i)] = theta[k];
                k += 1;
            }
        }
        Ok((mu, sigma))
    }

    pub fn state(&self, theta: &[f64]) -> Result<GaussianState> {
        let (mu, sigma) = self.split(theta)?;
        GaussianState::new(sigma, mu)
    }

    /// Coordinate tangent `d/d theta_k`.
    pub fn coordinate_tangent(&self, k: usize) -> (DVector<f64>, DMatrix<f64>) {
        let mut t = vec![0.0; self.num_params()];
        t[k] = 1.0;
        self.split(&t).expect("coordinate length matches")
    }

    /// `||dmu||^2 + tr(S Sigma S)` with `S Sigma + Sigma S = dSigma`, for a
    /// coordinate increment `delta` at `theta`.
    pub fn quadratic_form(&self, theta: &[f64], delta: &[f64]) -> Result<f64> {
        let (_, sigma) = self.split(theta)?;
        let (dmu, dsigma) = self.split(delta)?;
        let s = lyapunov_solve(&sigma, &dsigma)?;
        Ok(dmu.norm_squared() + (&s * &sigma * &s).trace())
    }
}

impl InformationMetric for GaussianModel {
    fn dim(&self) -> usize {
        self.num_params()
    }

    fn contains(&self, theta: &[f64]) -> bool {
        match self.split(theta) {
            Ok((mu, sigma)) => {
                if mu.iter().chain(sigma.iter()).any(|x| !x.is_finite()) {
                    return false;
                }
                let (min_sigma, min_h) = admissibility_margins(&sigma);
                min_sigma > 0.0 && min_h >= -super::ADMISSIBILITY_TOL
            }
            Err(_) => false,
        }
    }

    fn info_matrix(&self, theta: &[f64], _settings: &NumericSettings) -> Result<DMatrix<f64>> {
        let (_, sigma) = self.split(theta)?;
        if !self.contains(theta) {
            return Err(Error::Boundary {
                theta: theta.to_vec(),
            });
        }
        let d = self.num_params();
        let n = self.n();
        let mut g = DMatrix::zeros(d, d);
        for i in 0..n {
            g[(i, i)] = 1.0;
        }
        let s: Vec<DMatrix<f64>> = (n..d)
            .map(|k| lyapunov_solve(&sigma, &self.coordinate_tangent(k).1))
            .collect::<Result<_>>()?;
        for a in 0..s.len() {
            for b in a..s.len() {
                let v = (&s[a] * &sigma * &s[b]).trace();
                g[(n + a, n + b)] = v;
                g[(n + b, n + a)] = v;
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        let model = GaussianModel::new(1);
        let theta = [0.5, -1.0, 3.0, 0.2, 2.0];
        let (mu, sigma) = model.split(&theta).unwrap();
        assert_eq!(model.to_theta(&mu, &sigma), theta.to_vec());
        assert_eq!(model.num_params(), 5);
        assert_eq!(GaussianModel::new(2).num_params(), 14);
    }

    #[test]
    fn info_matrix_matches_quadratic_form() {
        let model = GaussianModel::new(1);
        let s = NumericSettings::default();
        let theta = [0.3, 0.1, 2.0, 0.4, 1.5];
        let g = model.info_matrix(&theta, &s).unwrap();
        let v = DVector::from_vec(vec![0.2, -0.7, 0.5, 0.3, -0.1]);
        let q = model.quadratic_form(&theta, v.as_slice()).unwrap();
        assert!((v.dot(&(&g * &v)) - q).abs() < 1e-14);
        assert!(g.clone().symmetric_eigen().eigenvalues.min() > 0.0);
    }

    #[test]
    fn isotropic_covariance_metric() {
        let st = GaussianState::new(DMatrix::identity(2, 2) * 2.0, DVector::zeros(2)).unwrap();
        let g = gaussian_info_matrix(&st);
        let t = GaussianTangent::new(DVector::zeros(2), DMatrix::identity(2, 2)).unwrap();
        assert!((g.norm_squared(&t).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn admissibility_domain() {
        let model = GaussianModel::new(1);
        assert!(model.contains(&[0.0, 0.0, 1.0, 0.0, 1.0]));
        assert!(!model.contains(&[0.0, 0.0, 0.9, 0.0, 1.0]));
        assert!(!model.contains(&[0.0, 0.0, 1.0]));
    }
}
