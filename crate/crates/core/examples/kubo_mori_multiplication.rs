// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use num_complex::Complex64;
use qwass::operator::{
    anticommutator_apply, kubo_mori_apply, log_mean, CMat, DensityOperator, HermitianOperator,
    TraceConvention,
};
use qwass::NumericSettings;

fn qubit(p: f64, coherence: f64) -> qwass::Result<DensityOperator> {
    let m = DMatrix::from_row_slice(2, 2, &[p, coherence, coherence, 1.0 - p]);
    DensityOperator::new(HermitianOperator::from_real(&m)?, TraceConvention::Standard)
}

/// Applies the Kubo-Mori and anticommutator multiplications to an
/// off-diagonal operator and inverts them again.
pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let rho = qubit(0.8, 0.0)?;
    let sigma = qubit(0.3, 0.1)?;

    let mut t = CMat::zeros(2, 2);
    t[(0, 1)] = Complex64::new(1.0, 0.0);
    t[(1, 0)] = Complex64::new(1.0, 0.0);

    let km = kubo_mori_apply(&rho, &rho, &t, false, &settings)?;
    let expected = log_mean(0.8, 0.2, settings.coincidence_rel);
    println!("L_rho(sigma_x)[0,1] = {:.12}, logarithmic mean {expected:.12}", km[(0, 1)].re);
    assert!((km[(0, 1)].re - expected).abs() < 1e-12);

    let ac = anticommutator_apply(&rho, &t, false, &settings)?;
    println!("anticommutator weight {:.3}", ac[(0, 1)].re);

    let mixed = kubo_mori_apply(&rho, &sigma, &t, false, &settings)?;
    let back = kubo_mori_apply(&rho, &sigma, &mixed, true, &settings)?;
    let err = (back - &t).camax();
    println!("two-state round trip error {err:.1e}");
    assert!(err < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
