// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use qwass::flows::{
    analytic_fermionic_path, euler_lagrange_residual, exact_fermionic_path,
    fermionic_distance_squared, geodesic_bvp, OptimizerConfig,
};
use qwass::metric::FermionicQubit;
use qwass::NumericSettings;

fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Discrete geodesic of the Kubo-Mori fermionic family compared with the
/// constant-speed geodesic and with the dilogarithm interpolation formula.
pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let (a, b, n) = (-0.5, 0.5, 40);
    let sol = geodesic_bvp(&model, &[a], &[b], n, &OptimizerConfig::default(), &settings)?;
    let path: Vec<f64> = sol.trajectory.thetas.iter().map(|p| p[0]).collect();

    let exact = exact_fermionic_path(a, b, n)?;
    let closed = analytic_fermionic_path(a, b, n)?;
    println!(
        "action {:.8} (squared distance {:.8}) after {} iterations",
        sol.action,
        fermionic_distance_squared(a, b)?,
        sol.iterations
    );
    println!("sup deviation from the constant-speed geodesic {:.3e}", sup(&path, &exact));
    println!("sup deviation from the zeta interpolation     {:.3e}", sup(&path, &closed));
    let el = euler_lagrange_residual(&model, &path, &settings)?;
    println!(
        "max Euler-Lagrange residual {:.3e}",
        el.iter().fold(0.0f64, |m, r| m.max(r.abs()))
    );
    assert!(sol.action_trace.windows(2).all(|w| w[1] <= w[0]));
    assert!(sup(&path, &exact) < 2e-2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
