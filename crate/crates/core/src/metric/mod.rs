// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Pullback of the transport metric to parameter space.
//!
//! For a family `theta -> rho(theta)` the information matrix is
//! `G_W(theta)_ij = <(D rho G)_i, (-Delta_rho)^+ (D rho G)_j>`, where the
//! pseudo-inverse acts on the complement of the identity.

mod models;

pub use models::{
    artanh_over_x, DepolarizingChannel, FermionicQubit, RegisteredModel, MODEL_NAMES,
};

use nalgebra::{DMatrix, DVector};

use crate::lindblad::{Structure, TransportLaplacian};
use crate::operator::{symmetrize, CMat, DensityOperator};
use crate::{Error, NumericSettings, Result};

/// A smooth family of faithful states on a parameter domain.
pub trait ParametricModel: Send + Sync {
    fn name(&self) -> &str;

    fn num_params(&self) -> usize;

    fn in_domain(&self, theta: &[f64]) -> bool;

    fn state(&self, theta: &[f64]) -> Result<DensityOperator>;

    fn structure(&self) -> &Structure;

    /// `(d rho / d theta_1, ..., d rho / d theta_d)` when known in closed form.
    fn analytic_derivative(&self, _theta: &[f64]) -> Option<Vec<CMat>> {
        None
    }

    /// Parameter-space metric `G_theta`.
    fn param_metric(&self, _theta: &[f64]) -> DMatrix<f64> {
        DMatrix::identity(self.num_params(), self.num_params())
    }

    /// Exact information matrix, for models that have one.
    fn closed_form(&self, _theta: &[f64]) -> Option<DMatrix<f64>> {
        None
    }
}

/// Anything that assigns an SPD matrix to points of a parameter domain.
pub trait InformationMetric: Send + Sync {
    fn dim(&self) -> usize;

    fn contains(&self, theta: &[f64]) -> bool;

    fn info_matrix(&self, theta: &[f64], settings: &NumericSettings) -> Result<DMatrix<f64>>;

    fn param_metric_at(&self, _theta: &[f64]) -> DMatrix<f64> {
        DMatrix::identity(self.dim(), self.dim())
    }
}

impl<M: ParametricModel + ?Sized> InformationMetric for M {
    fn dim(&self) -> usize {
        self.num_params()
    }

    fn contains(&self, theta: &[f64]) -> bool {
        theta.len() == self.num_params() && self.in_domain(theta)
    }

    fn info_matrix(&self, theta: &[f64], settings: &NumericSettings) -> Result<DMatrix<f64>> {
        Ok(wasserstein_info_matrix(self, theta, settings)?.matrix)
    }

    fn param_metric_at(&self, theta: &[f64]) -> DMatrix<f64> {
        self.param_metric(theta)
    }
}

/// `G_W` at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct WassersteinInfoMatrix {
    pub theta: Vec<f64>,
    pub matrix: DMatrix<f64>,
}

const MAX_STEP_SHRINK: usize = 30;

fn check_point<M: ParametricModel + ?Sized>(model: &M, theta: &[f64]) -> Result<()> {
    if theta.len() != model.num_params() {
        return Err(Error::DimensionMismatch {
            expected: model.num_params(),
            found: theta.len(),
        });
    }
    if !model.in_domain(theta) {
        return Err(Error::Boundary {
            theta: theta.to_vec(),
        });
    }
    Ok(())
}

/// Partial derivatives of `rho(theta)`, projected onto traceless operators.
///
/// Uses the model's closed form when available and central differences
/// with step `fd_rel_step * max(1, |theta_i|)` otherwise; the step is halved
/// while a stencil point leaves the domain.
pub fn model_derivative<M: ParametricModel + ?Sized>(
    model: &M,
    theta: &[f64],
    settings: &NumericSettings,
) -> Result<Vec<CMat>> {
    check_point(model, theta)?;
    let raw = match model.analytic_derivative(theta) {
        Some(d) => d,
        None => {
            let mut out = Vec::with_capacity(theta.len());
            for i in 0..theta.len() {
                let mut h = settings.fd_step(theta[i]);
                let mut shrinks = 0;
                let (plus, minus) = loop {
                    let mut p = theta.to_vec();
                    let mut m = theta.to_vec();
                    p[i] += h;
                    m[i] -= h;
                    if model.in_domain(&p) && model.in_domain(&m) {
                        break (p, m);
                    }
                    shrinks += 1;
                    if shrinks > MAX_STEP_SHRINK {
                        return Err(Error::Boundary {
                            theta: theta.to_vec(),
                        });
                    }
                    h *= 0.5;
                };
                let rp = model.state(&plus)?;
                let rm = model.state(&minus)?;
                out.push((rp.matrix() - rm.matrix()).scale(0.5 / h));
            }
            out
        }
    };
    let rho = model.state(theta)?;
    let conv = rho.convention();
    let d = rho.dim();
    Ok(raw
        .into_iter()
        .map(|m| {
            let m = symmetrize(&m);
            let shift = conv.trace(&m) / conv.unit(d);
            m - CMat::identity(d, d) * shift
        })
        .collect())
}

/// Potential `Phi` with `-Delta_rho Phi = X`, orthogonal to the identity.
pub fn score_solve(
    rho: &DensityOperator,
    x: &CMat,
    structure: &Structure,
    settings: &NumericSettings,
) -> Result<CMat> {
    TransportLaplacian::build(rho, structure, settings)?.solve(x, settings)
}

/// Information matrix at `theta` with the model's parameter metric.
pub fn wasserstein_info_matrix<M: ParametricModel + ?Sized>(
    model: &M,
    theta: &[f64],
    settings: &NumericSettings,
) -> Result<WassersteinInfoMatrix> {
    let derivs = model_derivative(model, theta, settings)?;
    let rho = model.state(theta)?;
    let lap = TransportLaplacian::build(&rho, model.structure(), settings)?;
    let g = model.param_metric(theta);
    let d = theta.len();
    let dim = rho.dim();
    let tilted: Vec<CMat> = (0..d)
        .map(|j| {
            (0..d).fold(CMat::zeros(dim, dim), |acc, k| acc + derivs[k].scale(g[(k, j)]))
        })
        .collect();
    let scores = tilted
        .iter()
        .map(|x| lap.solve(x, settings))
        .collect::<Result<Vec<_>>>()?;
    let conv = rho.convention();
    let matrix = DMatrix::from_fn(d, d, |i, j| conv.inner(&tilted[i], &scores[j]).re);
    Ok(WassersteinInfoMatrix {
        theta: theta.to_vec(),
        matrix,
    })
}

/// Left-point discretization `N sum_k <dtheta_k, G(theta_k) dtheta_k>` of
/// `int_0^1 <theta', G theta'> dt` for a path of `N + 1` points.
pub fn path_action<M: InformationMetric + ?Sized>(
    metric: &M,
    path: &[Vec<f64>],
    settings: &NumericSettings,
) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::Size(format!(
            "a path needs at least two points, got {}",
            path.len()
        )));
    }
    for p in path {
        if !metric.contains(p) {
            return Err(Error::Boundary { theta: p.clone() });
        }
    }
    let n = (path.len() - 1) as f64;
    let mut total = 0.0;
    for w in path.windows(2) {
        let step = DVector::from_iterator(w[0].len(), w[1].iter().zip(&w[0]).map(|(b, a)| b - a));
        if step.iter().all(|&x| x == 0.0) {
            continue;
        }
        let g = metric.info_matrix(&w[0], settings)?;
        total += step.dot(&(g * &step));
    }
    Ok(n * total)
}
