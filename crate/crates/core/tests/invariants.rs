// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::sync::Arc;

use common::{hs, matrix_power, random_clifford_state, random_density, random_hermitian};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use qwass::clifford::CliffordAlgebra;
use qwass::gaussian::{gaussian_info_matrix, GaussianState, GaussianTangent};
use qwass::lindblad::{LindbladGenerator, Multiplier, Picture, Structure, TransportLaplacian};
use qwass::operator::{kubo_mori_apply, CMat, OperatorVector, TraceConvention};
use qwass::NumericSettings;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra_element(alg: &CliffordAlgebra, coeffs: &[(f64, f64)]) -> CMat {
    let v = DVector::from_iterator(
        alg.basis_len(),
        coeffs.iter().cycle().take(alg.basis_len()).map(|&(re, im)| Complex64::new(re, im)),
    );
    alg.combine(&v)
}

#[test]
fn car_relations_up_to_three_modes() {
    for n in 1..=3 {
        let alg = CliffordAlgebra::new(n).unwrap();
        let d = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (alg.generator(i), alg.generator(j));
                let expected = if i == j { CMat::identity(d, d).scale(2.0) } else { CMat::zeros(d, d) };
                assert!((a * b + b * a - expected).camax() < 1e-14, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn basis_is_orthonormal_under_normalized_trace() {
    for n in 1..=3 {
        let alg = CliffordAlgebra::new(n).unwrap();
        let k = alg.basis_len();
        let err = (alg.basis().gram() - CMat::identity(k, k)).camax();
        assert!(err < 1e-14, "n={n}: {err}");
        let err = (alg.hermitian_basis().gram() - CMat::identity(k, k)).camax();
        assert!(err < 1e-14, "n={n}: {err}");
    }
}

#[test]
fn graded_generator_is_minus_four_number_operator() {
    for n in 1..=3 {
        let alg = CliffordAlgebra::new(n).unwrap();
        for k in 0..alg.basis_len() {
            let a = alg.element(k);
            let lhs = alg.graded_generator(a).unwrap();
            let rhs = alg.number_operator(a).unwrap().scale(-4.0);
            assert!((lhs - rhs).camax() < 1e-12, "n={n} element {k}");
        }
    }
}

#[test]
fn fermionic_laplacian_kernel_is_the_identity() {
    let settings = NumericSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        let alg = Arc::new(CliffordAlgebra::new(n).unwrap());
        for multiplier in [Multiplier::KuboMori, Multiplier::AntiCommutator] {
            let structure = Structure::fermionic(alg.clone(), multiplier);
            let rho = random_clifford_state(&mut rng, &alg, 0.6);
            let lap = TransportLaplacian::build(&rho, &structure, &settings).unwrap();
            assert_eq!(lap.pseudo_inverse().kernel_dim, 1, "n={n} {multiplier:?}");
            let id = CMat::identity(alg.dim(), alg.dim());
            assert!(lap.apply(&id).camax() < 1e-12);
        }
    }
}

#[test]
fn gradient_flow_identity_for_fermionic_generators() {
    let settings = NumericSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=2 {
        let alg = CliffordAlgebra::new(n).unwrap();
        let generator = Arc::new(LindbladGenerator::fermionic(&alg));
        let structure = Structure::lindblad(generator.clone(), Multiplier::KuboMori);
        let sigma_log = generator.sigma().log().unwrap().into_matrix();
        for _ in 0..5 {
            let rho = random_density(&mut rng, alg.dim(), 0.2);
            let x = rho.log().unwrap().into_matrix() - &sigma_log;
            let flow = structure.at(&rho, &settings).unwrap().neg_laplacian(&x).unwrap();
            let dual = generator.apply(rho.matrix(), Picture::Schroedinger);
            assert!((dual + flow).camax() < 1e-8, "n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divergence_is_minus_adjoint_of_gradient(
        n in 1usize..=3,
        a in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8),
        v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 24),
    ) {
        let alg = CliffordAlgebra::new(n).unwrap();
        let a = algebra_element(&alg, &a);
        let field = OperatorVector::new(
            (0..n).map(|j| algebra_element(&alg, &v[8 * j..8 * j + 8])).collect(),
        );
        let conv = TraceConvention::Normalized;
        let lhs = alg.gradient(&a).unwrap().inner(&field, conv);
        let rhs = conv.inner(&a, &alg.divergence(&field).unwrap());
        prop_assert!((lhs + rhs).norm() < 1e-10);
    }

    #[test]
    fn dirichlet_form_matches_kms_generator(p in 0.05f64..0.95, seed in any::<u64>()) {
        let generator = LindbladGenerator::damped_qubit(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::gaussian_matrix(&mut rng, 2);
        let b = common::gaussian_matrix(&mut rng, 2);
        let root = matrix_power(generator.sigma().matrix(), 0.5);
        let kms = |x: &CMat, y: &CMat| hs(x, &(&root * y * &root));
        let lhs: Complex64 = (0..generator.terms().len())
            .map(|j| kms(&generator.derivative(j, &a), &generator.derivative(j, &b)))
            .sum();
        let rhs = -kms(&a, &generator.apply(&b, Picture::Heisenberg));
        prop_assert!((lhs - rhs).norm() < 1e-8 * (1.0 + lhs.norm()));
    }

    #[test]
    fn gradient_flow_identity_for_damped_qubit(p in 0.05f64..0.95, seed in any::<u64>()) {
        let settings = NumericSettings::default();
        let generator = Arc::new(LindbladGenerator::damped_qubit(p).unwrap());
        let structure = Structure::lindblad(generator.clone(), Multiplier::KuboMori);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, 2, 0.3);
        let x = rho.log().unwrap().into_matrix() - generator.sigma().log().unwrap().into_matrix();
        let flow = structure.at(&rho, &settings).unwrap().neg_laplacian(&x).unwrap();
        let dual = generator.apply(rho.matrix(), Picture::Schroedinger);
        prop_assert!((dual + flow).camax() < 1e-8);
    }

    #[test]
    fn kubo_mori_is_positive_and_self_adjoint(d in 2usize..=4, seed in any::<u64>()) {
        let settings = NumericSettings::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, d, 0.1);
        let a = random_hermitian(&mut rng, d);
        let b = random_hermitian(&mut rng, d);
        let la = kubo_mori_apply(&rho, &rho, &a, false, &settings).unwrap();
        let lb = kubo_mori_apply(&rho, &rho, &b, false, &settings).unwrap();
        prop_assert!(hs(&a, &la).re >= -1e-14);
        prop_assert!((hs(&a, &lb) - hs(&la, &b)).norm() < 1e-12);
    }

    #[test]
    fn gaussian_metric_is_symmetric_and_positive(
        s in prop::collection::vec(-1.0f64..1.0, 4),
        xi in prop::collection::vec(-1.0f64..1.0, 5),
        eta in prop::collection::vec(-1.0f64..1.0, 5),
    ) {
        let a = DMatrix::from_row_slice(2, 2, &s);
        let sigma = &a * a.transpose() + DMatrix::identity(2, 2) * 1.5;
        let state = GaussianState::new(sigma.clone(), DVector::zeros(2)).unwrap();
        let metric = gaussian_info_matrix(&state);
        let tangent = |v: &[f64]| {
            GaussianTangent::new(
                DVector::from_row_slice(&v[..2]),
                DMatrix::from_row_slice(2, 2, &[v[2], v[3], v[3], v[4]]),
            )
            .unwrap()
        };
        let (x, y) = (tangent(&xi), tangent(&eta));
        let gxy = metric.inner(&x, &y).unwrap();
        let gyx = metric.inner(&y, &x).unwrap();
        prop_assert!((gxy - gyx).abs() < 1e-10 * (1.0 + gxy.abs()));
        prop_assert!(metric.norm_squared(&x).unwrap() >= -1e-12);
        let sdot = DMatrix::from_row_slice(2, 2, &[xi[2], xi[3], xi[3], xi[4]]);
        let sol = metric.lyapunov(&sdot).unwrap();
        prop_assert!((&sol * &sigma + &sigma * &sol - sdot).amax() < 1e-10);
    }
}

#[test]
fn transport_laplacian_matches_definition_on_damped_qubit() {
    let settings = NumericSettings::default();
    let generator = Arc::new(LindbladGenerator::damped_qubit(0.3).unwrap());
    let structure = Structure::lindblad(generator, Multiplier::KuboMori);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rho = random_density(&mut rng, 2, 0.3);
    let lap = TransportLaplacian::build(&rho, &structure, &settings).unwrap();
    let a = random_hermitian(&mut rng, 2);
    let direct = structure.at(&rho, &settings).unwrap().neg_laplacian(&a).unwrap();
    assert!((lap.apply(&a) - direct).camax() < 1e-12);
    let x = a.clone() - CMat::identity(2, 2).scale(a.trace().re / 2.0);
    let phi = lap.solve(&x, &settings).unwrap();
    assert!((lap.apply(&phi) - &x).camax() < 1e-10);
    assert!(phi.trace().norm() < 1e-12);
}
