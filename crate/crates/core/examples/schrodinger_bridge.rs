// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use qwass::flows::{geodesic_bvp, sbp_equivalence_check, sbp_solve, OptimizerConfig};
use qwass::metric::{FermionicQubit, ParametricModel};
use qwass::NumericSettings;

/// Bridges two single-mode fermionic states with and without entropic
/// regularization. Without it the bridge value is the transport action.
pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let config = OptimizerConfig::default();
    let model = FermionicQubit::kubo_mori();
    let structure = model.structure();
    let (a, b, n) = (-0.5, 0.5, 20);
    let rho_in = model.state(&[a])?;
    let rho_fi = model.state(&[b])?;

    let plain = sbp_solve(structure, &rho_in, &rho_fi, 0.0, n, &config, &settings)?;
    let geodesic = geodesic_bvp(&model, &[a], &[b], n, &config, &settings)?;
    println!(
        "beta = 0: bridge {:.6}, geodesic action {:.6}",
        plain.functional_value, geodesic.action
    );
    assert!((plain.functional_value - geodesic.action).abs() < 1e-2);

    let beta = 0.1;
    let regularized = sbp_solve(structure, &rho_in, &rho_fi, beta, n, &config, &settings)?;
    println!(
        "beta = {beta}: bridge {:.6} (transport {:.6}, Fisher {:.6})",
        regularized.functional_value, regularized.transport_cost, regularized.fisher_cost
    );
    assert!(regularized.functional_value >= plain.functional_value);

    let report = sbp_equivalence_check(
        &regularized,
        &structure.invariant_state(),
        beta,
        structure,
        &settings,
    )?;
    println!(
        "identity residual {:.3e}, entropy difference {:.3e}",
        report.residual, report.entropy_difference
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
