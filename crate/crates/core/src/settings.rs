// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Numeric tolerances shared by every module.
//!
//! A single record is threaded from the command line (or a JSON config file)
//! down to the operator kernels so that runs are reproducible from their
//! configuration alone.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericSettings {
    /// Hermiticity tolerance, relative to the max-norm of the operator.
    pub hermitian_tol: f64,
    /// Allowed deviation of a density operator's trace from one.
    pub trace_tol: f64,
    /// Eigenvalues above `-psd_tol` count as nonnegative.
    pub psd_tol: f64,
    /// Minimum eigenvalue for a faithful state.
    pub faithful_eps: f64,
    /// Relative gap below which two eigenvalues are treated as coincident.
    pub coincidence_rel: f64,
    /// Singular values below `kernel_rel * sigma_max` are counted as kernel.
    pub kernel_rel: f64,
    /// Residual allowed when expanding an operator in an algebra basis.
    pub expansion_tol: f64,
    /// Relative step for central finite differences.
    pub fd_rel_step: f64,
    /// Gauss-Legendre nodes used by quadrature cross-checks.
    pub quadrature_nodes: usize,
    /// Admissibility tolerance for `Sigma + i nu`.
    pub symplectic_tol: f64,
}

impl Default for NumericSettings {
    fn default() -> Self {
        Self {
            hermitian_tol: 1e-12,
            trace_tol: 1e-12,
            psd_tol: 1e-12,
            faithful_eps: 1e-10,
            coincidence_rel: 1e-12,
            kernel_rel: 1e-9,
            expansion_tol: 1e-10,
            fd_rel_step: 1e-6,
            quadrature_nodes: 64,
            symplectic_tol: 1e-10,
        }
    }
}

impl NumericSettings {
    /// Central-difference step for a coordinate of magnitude `x`.
    pub fn fd_step(&self, x: f64) -> f64 {
        self.fd_rel_step * x.abs().max(1.0)
    }
}
