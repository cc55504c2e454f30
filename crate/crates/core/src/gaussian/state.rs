// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

/// `nu = [[0, 1], [-1, 0]]^{(+) m}`.
pub fn symplectic_form(m: usize) -> DMatrix<f64> {
    let mut nu = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        nu[(2 * i, 2 * i + 1)] = 1.0;
        nu[(2 * i + 1, 2 * i)] = -1.0;
    }
    nu
}

/// Smallest eigenvalue of `Sigma` and of the Hermitian matrix `Sigma + i nu`.
pub fn admissibility_margins(sigma: &DMatrix<f64>) -> (f64, f64) {
    let m = sigma.nrows() / 2;
    let min_sigma = sigma
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let nu = symplectic_form(m);
    let h = DMatrix::from_fn(2 * m, 2 * m, |i, j| Complex64::new(sigma[(i, j)], nu[(i, j)]));
    let min_h = h
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    (min_sigma, min_h)
}

/// Gaussian state with mean `mu` and covariance `Sigma` on `R^{2m}`.
///
/// Covariances are in shot-noise units: the vacuum is `Sigma = I`, which
/// sits on the admissibility boundary `Sigma + i nu >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mu: DVector<f64>,
    sigma: DMatrix<f64>,
}

/// Default tolerance on the smallest eigenvalue of `Sigma + i nu`.
pub const ADMISSIBILITY_TOL: f64 = 1e-10;

/// Validates `(Sigma, mu)` as a quantum-admissible Gaussian state.
pub fn validate_gaussian(sigma: &DMatrix<f64>, mu: &DVector<f64>) -> Result<GaussianState> {
    GaussianState::with_tolerance(sigma.clone(), mu.clone(), ADMISSIBILITY_TOL)
}

impl GaussianState {
    pub fn new(sigma: DMatrix<f64>, mu: DVector<f64>) -> Result<Self> {
        Self::with_tolerance(sigma, mu, ADMISSIBILITY_TOL)
    }

    pub fn with_tolerance(sigma: DMatrix<f64>, mu: DVector<f64>, tol: f64) -> Result<Self> {
        let n = sigma.nrows();
        if n == 0 || n % 2 != 0 || !sigma.is_square() {
            return Err(Error::Size(format!(
                "covariance must be 2m x 2m, got {}x{}",
                sigma.nrows(),
                sigma.ncols()
            )));
        }
        if mu.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mu.len(),
            });
        }
        let asym = (&sigma - sigma.transpose()).amax();
        if asym > 1e-12 * sigma.amax().max(1.0) {
            return Err(Error::Admissibility {
                reason: "covariance is not symmetric",
                eigenvalue: asym,
            });
        }
        let sigma = (&sigma + sigma.transpose()) * 0.5;
        let (min_sigma, min_h) = admissibility_margins(&sigma);
        if !(min_sigma > 0.0) {
            return Err(Error::Admissibility {
                reason: "covariance is not positive definite",
                eigenvalue: min_sigma,
            });
        }
        if min_h < -tol {
            return Err(Error::Admissibility {
                reason: "Sigma + i nu is not positive semidefinite",
                eigenvalue: min_h,
            });
        }
        Ok(Self { mu, sigma })
    }

    /// Thermal state with mean photon number `n`: `Sigma = (2n + 1) I`.
    pub fn thermal(n: f64) -> Result<Self> {
        Self::new(
            DMatrix::identity(2, 2) * (2.0 * n + 1.0),
            DVector::zeros(2),
        )
    }

    /// Direct sum of independent modes (the tensor-product state).
    pub fn tensor(parts: &[GaussianState]) -> Result<Self> {
        let n: usize = parts.iter().map(|p| p.mu.len()).sum();
        let mut sigma = DMatrix::zeros(n, n);
        let mut mu = DVector::zeros(n);
        let mut at = 0;
        for p in parts {
            let k = p.mu.len();
            sigma.view_mut((at, at), (k, k)).copy_from(&p.sigma);
            mu.rows_mut(at, k).copy_from(&p.mu);
            at += k;
        }
        Self::new(sigma, mu)
    }

    pub fn modes(&self) -> usize {
        self.mu.len() / 2
    }

    pub fn mu(&self) -> &DVector<f64> {
        &self.mu
    }

    pub fn sigma(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    /// `exp(-<z - mu, Sigma^-1 (z - mu)> / 2) / ((2 pi)^m sqrt(det Sigma))`.
    pub fn wigner_pdf(&self, z: &DVector<f64>) -> f64 {
        let d = z - &self.mu;
        let chol = self
            .sigma
            .clone()
            .cholesky()
            .expect("validated covariance is positive definite");
        let q = d.dot(&chol.solve(&d));
        let det = self.sigma.determinant();
        (-0.5 * q).exp() / ((2.0 * PI).powi(self.modes() as i32) * det.sqrt())
    }

    /// `chi(xi) = exp(-<xi, gamma xi> / 4 + i <d, xi>)` with `gamma = Sigma`
    /// and `d = mu / sqrt 2`; equivalently the Fourier transform of the
    /// Wigner density evaluated at `xi / sqrt 2`.
    pub fn characteristic_fn(&self, xi: &DVector<f64>) -> Complex64 {
        let quad = xi.dot(&(&self.sigma * xi));
        let lin = self.mu.dot(xi) / 2f64.sqrt();
        Complex64::new(-0.25 * quad, lin).exp()
    }

    /// Single-mode density in the complex amplitude `z = (q + i p) / 2`,
    /// `4 W(2 Re z, 2 Im z)`.
    pub fn amplitude_density(&self, z: Complex64) -> f64 {
        4.0 * self.wigner_pdf(&DVector::from_vec(vec![2.0 * z.re, 2.0 * z.im]))
    }
}

/// Convex combination of Gaussian states.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    weights: Vec<f64>,
    components: Vec<GaussianState>,
}

impl GaussianMixture {
    pub fn new(weights: Vec<f64>, components: Vec<GaussianState>) -> Result<Self> {
        if weights.len() != components.len() || components.is_empty() {
            return Err(Error::Size(
                "mixture needs one weight per component and at least one component".into(),
            ));
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::Domain("mixture weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("mixture weights sum to {total}, not 1")));
        }
        let m = components[0].modes();
        if components.iter().any(|c| c.modes() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: components.iter().map(|c| c.modes()).find(|&k| k != m).unwrap_or(m),
            });
        }
        Ok(Self {
            weights,
            components,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[GaussianState] {
        &self.components
    }

    /// `(sum l_i mu_i, sum l_i Sigma_i + sum l_i mu_i mu_i^T - mu mu^T)`.
    pub fn moments(&self) -> (DVector<f64>, DMatrix<f64>) {
        let n = self.components[0].mu.len();
        let mut mean = DVector::zeros(n);
        let mut cov = DMatrix::zeros(n, n);
        for (w, c) in self.weights.iter().zip(&self.components) {
            mean += &c.mu * *w;
            cov += &c.sigma * *w;
        }
        (mean, cov + self.spread())
    }

    /// `sum l_i mu_i mu_i^T - mu mu^T`, positive semidefinite.
    pub fn spread(&self) -> DMatrix<f64> {
        let n = self.components[0].mu.len();
        let mut mean = DVector::zeros(n);
        let mut second = DMatrix::zeros(n, n);
        for (w, c) in self.weights.iter().zip(&self.components) {
            mean += &c.mu * *w;
            second += &c.mu * c.mu.transpose() * *w;
        }
        second - &mean * mean.transpose()
    }
}

/// Mean and covariance of a mixture.
pub fn mixture_moments(mix: &GaussianMixture) -> (DVector<f64>, DMatrix<f64>) {
    mix.moments()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_on_the_boundary() {
        let (_, h) = admissibility_margins(&DMatrix::identity(2, 2));
        assert!(h.abs() < 1e-15);
        assert!(GaussianState::new(DMatrix::identity(2, 2), DVector::zeros(2)).is_ok());
    }

    #[test]
    fn half_vacuum_rejected() {
        let err = GaussianState::new(DMatrix::identity(2, 2) * 0.5, DVector::zeros(2)).unwrap_err();
        match err {
            Error::Admissibility { eigenvalue, .. } => assert!((eigenvalue + 0.5).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn indefinite_rejected() {
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(
            GaussianState::new(s, DVector::zeros(2)),
            Err(Error::Admissibility { .. })
        ));
    }

    #[test]
    fn peak_value() {
        let s = DMatrix::from_row_slice(2, 2, &[26.0, 1.0, 1.0, 1.0]);
        let mu = DVector::from_vec(vec![-1.0, -1.0]);
        let g = GaussianState::new(s.clone(), mu.clone()).unwrap();
        let expect = 1.0 / (2.0 * PI * s.determinant().sqrt());
        assert!((g.wigner_pdf(&mu) - expect).abs() < 1e-16);
    }

    #[test]
    fn thermal_amplitude_density() {
        let g = GaussianState::thermal(1.0).unwrap();
        for z in [Complex64::new(0.0, 0.0), Complex64::new(0.4, -1.1), Complex64::new(2.0, 0.3)] {
            let expect = 2.0 / (3.0 * PI) * (-2.0 * z.norm_sqr() / 3.0).exp();
            assert!((g.amplitude_density(z) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn mixture_two_point_spread() {
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.5]);
        let a = 0.8;
        let c1 = GaussianState::new(s.clone(), DVector::from_vec(vec![a, 0.0])).unwrap();
        let c2 = GaussianState::new(s.clone(), DVector::from_vec(vec![-a, 0.0])).unwrap();
        let mix = GaussianMixture::new(vec![0.5, 0.5], vec![c1, c2]).unwrap();
        let (mean, cov) = mix.moments();
        assert!(mean.norm() < 1e-15);
        let mut expect = s;
        expect[(0, 0)] += a * a;
        assert!((cov - expect).amax() < 1e-15);
    }

    #[test]
    fn mixture_weight_checks() {
        let g = GaussianState::thermal(0.0).unwrap();
        assert!(GaussianMixture::new(vec![0.6, 0.6], vec![g.clone(), g.clone()]).is_err());
        assert!(GaussianMixture::new(vec![1.0], vec![]).is_err());
    }
}
