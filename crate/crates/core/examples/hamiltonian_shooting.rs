// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use qwass::flows::{fermionic_arc_length, geodesic_ivp, hamiltonian};
use qwass::metric::{artanh_over_x, FermionicQubit};
use qwass::NumericSettings;

/// Shoots from `theta0` with the momentum of the unit-time geodesic to
/// `theta1` and checks where the Hamiltonian flow lands.
pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let (theta0, theta1) = (-0.6, 0.7);
    let speed = fermionic_arc_length(theta1)? - fermionic_arc_length(theta0)?;
    let p0 = artanh_over_x(theta0).sqrt() * speed;

    let traj = geodesic_ivp(&model, &[theta0], &[p0], 1.0, 1e-3, &settings)?;
    let end = traj.last().unwrap_or(&[theta0])[0];
    let h0 = hamiltonian(&model, &[theta0], &[p0], &settings)?;
    let drift = traj
        .diagnostics
        .iter()
        .fold(0.0f64, |m, h| m.max((h - h0).abs()))
        / h0;
    println!("landed at {end:.10} (target {theta1}), relative H drift {drift:.2e}");
    assert!(!traj.exited);
    assert!((end - theta1).abs() < 1e-4);
    assert!(drift < 1e-6);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
