// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

// Natural-gradient descent of the relative entropy to the maximally mixed
// state. For the Kubo-Mori family the update direction is exactly
// `-theta`, so the flow decays like `theta_0 exp(-t)`.

use qwass::flows::{natural_gradient_direction, natural_gradient_flow, RelativeEntropyObjective};
use qwass::metric::FermionicQubit;
use qwass::NumericSettings;

pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let entropy = RelativeEntropyObjective::to_invariant(&model, &settings);

    for theta in [-0.7, -0.2, 0.4, 0.9] {
        let d = natural_gradient_direction(&model, &entropy, &[theta], &settings)?;
        println!("theta {theta:>5}: direction {:.10}", d[0]);
        assert!((d[0] + theta).abs() < 1e-8);
    }

    let theta0 = 0.8;
    let mut previous = None;
    for tau in [4e-2, 2e-2, 1e-2] {
        let steps = (1.0 / tau) as usize;
        let traj = natural_gradient_flow(&model, &[theta0], &entropy, tau, steps, &settings)?;
        let t = *traj.times.last().unwrap_or(&0.0);
        let err = (traj.last().unwrap_or(&[theta0])[0] - theta0 * (-t).exp()).abs();
        match previous {
            Some(p) => println!("tau {tau:.0e}: endpoint error {err:.3e}, ratio {:.3}", p / err),
            None => println!("tau {tau:.0e}: endpoint error {err:.3e}"),
        }
        previous = Some(err);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
