// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use qwass::gaussian::{grid_points, wigner_grid, GaussianState};

/// Samples the Wigner density of a thermal state and integrates it on the
/// grid with the midpoint rule.
pub fn run_example() -> qwass::Result<()> {
    let state = GaussianState::thermal(1.0)?;
    let step = 0.05;
    let axis = grid_points(-9.0, 9.0, step)?;
    let grid = wigner_grid(&state, &axis, &axis)?;
    let mass: f64 = grid.rows.iter().map(|r| r[2]).sum::<f64>() * step * step;
    let peak = grid.rows.iter().map(|r| r[2]).fold(0.0, f64::max);
    println!("{} samples, total mass {mass:.8}, peak {peak:.6}", grid.rows.len());
    assert!((mass - 1.0).abs() < 1e-6);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
