// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use qwass::lindblad::TransportLaplacian;
use qwass::metric::{wasserstein_info_matrix, DepolarizingChannel, ParametricModel};
use qwass::operator::real_part;
use qwass::NumericSettings;

/// Transport Laplacian and information matrix along a depolarizing channel
/// on the two-mode fermionic algebra.
pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let model = DepolarizingChannel::new();
    let theta = 1.0;
    let rho = model.state(&[theta])?;
    let lap = TransportLaplacian::build(&rho, model.structure(), &settings)?;
    let assembled = real_part(&lap.matrix_in(&model.off_identity_elements()));
    let exact = DepolarizingChannel::exact_laplacian(theta);
    println!("assembled Laplacian at theta = {theta}:{assembled:.6}");
    let err = (&assembled - &exact).amax();
    println!("entrywise deviation from the closed form {err:.1e}");
    assert!(err < 1e-12);

    for theta in [0.1, 0.5, 1.0, 2.0] {
        let g = wasserstein_info_matrix(&model, &[theta], &settings)?.matrix[(0, 0)];
        let reference = DepolarizingChannel::exact(theta);
        println!("theta {theta:>4}: G_W {g:.12} closed form {reference:.12}");
        assert!((g - reference).abs() < 1e-8);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
