// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by operator construction, transport geometry and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (relative residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("trace is {found} under the {convention} convention, expected {expected}")]
    InvalidTrace {
        found: f64,
        expected: f64,
        convention: &'static str,
    },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state is not faithful (min eigenvalue {min_eigenvalue:.3e} < {threshold:.1e})")]
    NotFaithful { min_eigenvalue: f64, threshold: f64 },

    #[error("{function} undefined for eigenvalue {eigenvalue:.6e}")]
    MatrixFunctionDomain {
        function: &'static str,
        eigenvalue: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operator is outside the algebra (expansion residual {residual:.3e})")]
    Expansion { residual: f64 },

    #[error("ergodicity violation: declared kernel dimension {declared}, detected {detected}")]
    Ergodicity { declared: usize, detected: usize },

    #[error("unsupported size: {0}")]
    Size(String),

    #[error("parameter {theta:?} is outside the model domain")]
    Boundary { theta: Vec<f64> },

    #[error("covariance is not quantum admissible: {reason} (eigenvalue {eigenvalue:.6e})")]
    Admissibility { reason: &'static str, eigenvalue: f64 },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("faithfulness projection failed at path step {step}")]
    Infeasible { step: usize },

    #[error("flow left the domain at step {step} after repeated step halving (last valid point {theta:?})")]
    DomainExit { step: usize, theta: Vec<f64> },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
