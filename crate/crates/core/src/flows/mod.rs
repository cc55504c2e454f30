// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Gradient flows, geodesics and Schrödinger bridges.

mod bridge;
mod bvp;
mod gradient;
mod hamiltonian;
mod path;
pub mod quadrature;
mod special;

pub use bridge::{
    sbp_equivalence_check, sbp_solve, BridgePath, BridgeProblem, EquivalenceReport,
};
pub use bvp::{euler_lagrange_residual, geodesic_bvp, GeodesicSolution, MetricPathProblem};
pub use gradient::{
    natural_gradient_direction, natural_gradient_flow, objective_gradient, FnObjective,
    Objective, RelativeEntropyObjective,
};
pub use hamiltonian::{geodesic_ivp, hamiltonian};
pub use path::{
    linear_path, optimize_path, optimize_path_from, path_value, OptimizerConfig, OptimizerMode,
    PathProblem, PathSolution,
};
pub use special::{
    analytic_fermionic_geodesic, analytic_fermionic_path, dilog, exact_fermionic_geodesic,
    exact_fermionic_path, fermionic_arc_length, fermionic_distance_squared, zeta_fn,
    zeta_inverse,
};

pub(crate) use crate::metric::artanh_over_x;

/// Sampled solution of a flow or geodesic problem.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowTrajectory {
    /// Strictly increasing sample times.
    pub times: Vec<f64>,
    /// Parameter vector at each time.
    pub thetas: Vec<Vec<f64>>,
    /// Objective, cumulative action or Hamiltonian at each time.
    pub diagnostics: Vec<f64>,
    /// Set when integration stopped early at the domain boundary.
    pub exited: bool,
}

impl FlowTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&[f64]> {
        self.thetas.last().map(|v| v.as_slice())
    }
}
