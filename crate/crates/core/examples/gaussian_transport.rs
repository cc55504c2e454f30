// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

// Geodesic between two single-mode Gaussian states, optimized with the
// deterministic descent and with seeded annealing. Every iterate stays a
// valid quantum covariance.

use nalgebra::{DMatrix, DVector};
use qwass::flows::{linear_path, OptimizerConfig};
use qwass::gaussian::{admissibility_margins, gaussian_geodesic, GaussianModel, GaussianState};
use qwass::metric::path_action;
use qwass::NumericSettings;

pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let start = GaussianState::new(
        DMatrix::from_row_slice(2, 2, &[26.0, 1.0, 1.0, 1.0]),
        DVector::from_row_slice(&[-1.0, -1.0]),
    )?;
    let end = GaussianState::new(
        DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 2.0]),
        DVector::from_row_slice(&[2.0, 7.0]),
    )?;
    let model = GaussianModel::new(1);
    let n = 12;
    let theta0 = model.to_theta(start.mu(), start.sigma());
    let theta1 = model.to_theta(end.mu(), end.sigma());
    let linear = path_action(&model, &linear_path(&theta0, &theta1, n), &settings)?;
    println!("linear interpolation action {linear:.6}");

    let mut annealing = OptimizerConfig::monte_carlo(7);
    annealing.epochs = 40;
    for (label, config) in [("descent", OptimizerConfig::default()), ("annealing", annealing)] {
        let sol = gaussian_geodesic(&start, &end, n, &config, &settings)?;
        let worst = sol
            .trajectory
            .thetas
            .iter()
            .map(|t| model.split(t).map(|(_, s)| admissibility_margins(&s).1))
            .collect::<qwass::Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        println!(
            "{label:>9}: action {:.6}, smallest eigenvalue of Sigma + i nu {worst:.2e}",
            sol.action
        );
        assert!(sol.action < linear);
        assert!(worst >= -1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
