// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Gaussian states in phase space.
//!
//! A state on `m` modes is a mean `mu` and covariance `Sigma` on `R^{2m}`
//! with `Sigma + i nu >= 0`. Its Wigner function is a Gaussian density, and
//! the transport metric restricted to Gaussians is
//! `g((mu', Sigma'), (mu', Sigma')) = |mu'|^2 + tr(S Sigma S)` with
//! `S Sigma + Sigma S = Sigma'`.

mod geodesic;
mod metric;
mod state;

pub use geodesic::{gaussian_geodesic, GaussianPathProblem};
pub use metric::{gaussian_info_matrix, GaussianMetric, GaussianModel, GaussianTangent};
pub use state::{
    admissibility_margins, mixture_moments, symplectic_form, validate_gaussian, GaussianMixture,
    GaussianState, ADMISSIBILITY_TOL,
};

/// Samples of a single-mode Wigner density on a rectangular grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    /// Rows `(x, xi, W(x, xi))`, `x` varying slowest.
    pub rows: Vec<[f64; 3]>,
}

/// Grid points `start, start + step, ...` up to `stop` (inclusive, with a
/// relative slack of `1e-9` steps).
pub fn grid_points(start: f64, stop: f64, step: f64) -> crate::Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
        return Err(crate::Error::Domain(format!(
            "grid needs finite bounds and a positive step, got {start}:{stop}:{step}"
        )));
    }
    if stop < start {
        return Ok(Vec::new());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| start + k as f64 * step).collect())
}

/// Evaluates a single-mode state on `xs x xis`.
pub fn wigner_grid(state: &GaussianState, xs: &[f64], xis: &[f64]) -> crate::Result<WignerGrid> {
    if state.modes() != 1 {
        return Err(crate::Error::DimensionMismatch {
            expected: 1,
            found: state.modes(),
        });
    }
    let mut rows = Vec::with_capacity(xs.len() * xis.len());
    for &x in xs {
        for &xi in xis {
            let z = nalgebra::DVector::from_vec(vec![x, xi]);
            rows.push([x, xi, state.wigner_pdf(&z)]);
        }
    }
    Ok(WignerGrid { rows })
}
