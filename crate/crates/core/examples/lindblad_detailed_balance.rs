// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

// A damped qubit satisfies detailed balance with respect to its thermal
// state, and its dual generator is the transport gradient flow of the
// relative entropy: `L*(rho) = Delta_rho(log rho - log sigma)`.

use std::sync::Arc;

use nalgebra::DMatrix;
use qwass::lindblad::{LindbladGenerator, Multiplier, Picture, Structure, TransportLaplacian};
use qwass::operator::{DensityOperator, HermitianOperator, TraceConvention};
use qwass::NumericSettings;

pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let generator = Arc::new(LindbladGenerator::damped_qubit(0.7)?);
    let report = generator.validate();
    println!(
        "detailed balance accepted: {}, max residual {:.1e}",
        report.accepted(),
        report.max_residual()
    );

    let sigma = generator.sigma().clone();
    let stationary = generator.apply(sigma.matrix(), Picture::Schroedinger).camax();
    println!("|L*(sigma)| = {stationary:.1e}");
    assert!(stationary < 1e-12);

    let structure = Structure::lindblad(generator.clone(), Multiplier::KuboMori);
    let rho = DensityOperator::new(
        HermitianOperator::from_real(&DMatrix::from_row_slice(2, 2, &[0.35, 0.2, 0.2, 0.65]))?,
        TraceConvention::Standard,
    )?;
    let x = rho.log()?.into_matrix() - sigma.log()?.into_matrix();
    let flow = structure.at(&rho, &settings)?.neg_laplacian(&x)?;
    let dual = generator.apply(rho.matrix(), Picture::Schroedinger);
    let err = (dual + flow).camax();
    println!("|L*(rho) - Delta_rho(log rho - log sigma)| = {err:.1e}");
    assert!(err < 1e-8);

    let lap = TransportLaplacian::build(&rho, &structure, &settings)?;
    let kernel = lap
        .superoperator()
        .hermitian_eigenvalues()
        .iter()
        .filter(|v| v.abs() < 1e-10)
        .count();
    println!("kernel dimension of the transport Laplacian: {kernel}");
    assert_eq!(kernel, 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
