// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{kubo_mori_quadrature, random_density};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qwass::flows::{
    geodesic_bvp, geodesic_ivp, natural_gradient_direction,
    natural_gradient_flow, OptimizerConfig, RelativeEntropyObjective,
};
use qwass::gaussian::{
    gaussian_info_matrix, mixture_moments, GaussianMixture, GaussianState, GaussianTangent,
};
use qwass::metric::{path_action, FermionicQubit, ParametricModel};
use qwass::operator::{kubo_mori_apply, CMat};
use qwass::NumericSettings;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn kubo_mori_matches_quadrature() {
    let settings = NumericSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    for d in [2, 4, 8] {
        for _ in 0..5 {
            let rho1 = random_density(&mut rng, d, 0.05);
            let rho2 = random_density(&mut rng, d, 0.05);
            let t = common::gaussian_matrix(&mut rng, d);
            let fast = kubo_mori_apply(&rho1, &rho2, &t, false, &settings).unwrap();
            let slow = kubo_mori_quadrature(rho1.matrix(), rho2.matrix(), &t, 64);
            assert!((fast - slow).camax() < 1e-8, "dim {d}");
        }
    }
}

fn wigner_mass_and_transform(state: &GaussianState, xi: &DVector<f64>) -> (f64, Complex64) {
    let (mu, sigma) = (state.mu(), state.sigma());
    let half = [6.0 * sigma[(0, 0)].sqrt(), 6.0 * sigma[(1, 1)].sqrt()];
    let n = 600;
    let h = [2.0 * half[0] / n as f64, 2.0 * half[1] / n as f64];
    let mut mass = 0.0;
    let mut transform = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let z = DVector::from_vec(vec![
                mu[0] - half[0] + (i as f64 + 0.5) * h[0],
                mu[1] - half[1] + (j as f64 + 0.5) * h[1],
            ]);
            let w = state.wigner_pdf(&z) * h[0] * h[1];
            mass += w;
            transform += Complex64::new(0.0, z.dot(xi) / 2f64.sqrt()).exp() * w;
        }
    }
    (mass, transform)
}

#[test]
fn wigner_density_normalization_and_characteristic_function() {
    let state = GaussianState::new(
        DMatrix::from_row_slice(2, 2, &[26.0, 1.0, 1.0, 1.0]),
        DVector::from_row_slice(&[-1.0, -1.0]),
    )
    .unwrap();
    for xi in [[0.0, 0.0], [0.2, -0.5], [-0.1, 1.0]] {
        let xi = DVector::from_row_slice(&xi);
        let (mass, transform) = wigner_mass_and_transform(&state, &xi);
        assert!((mass - 1.0).abs() < 1e-6);
        assert!((transform - state.characteristic_fn(&xi)).norm() < 1e-6);
    }
}

#[test]
fn separability_holds_for_up_to_three_blocks() {
    let blocks = [
        GaussianState::new(DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.5]), DVector::zeros(2)).unwrap(),
        GaussianState::thermal(0.7).unwrap(),
        GaussianState::new(DMatrix::from_row_slice(2, 2, &[5.0, -1.0, -1.0, 0.9]), DVector::from_row_slice(&[1.0, 2.0])).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 1..=3 {
        let joint = GaussianState::tensor(&blocks[..k]).unwrap();
        let mut total_mu = DVector::zeros(2 * k);
        let mut total_sigma = DMatrix::zeros(2 * k, 2 * k);
        let mut separate = 0.0;
        for (b, state) in blocks[..k].iter().enumerate() {
            let mu: DVector<f64> = DVector::from_fn(2, |_, _| rng.random_range(-1.0..1.0));
            let s: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let sigma = DMatrix::from_row_slice(2, 2, &[s[0], s[1], s[1], s[2]]);
            let t = GaussianTangent::new(mu.clone(), sigma.clone()).unwrap();
            separate += gaussian_info_matrix(state).norm_squared(&t).unwrap();
            total_mu.rows_mut(2 * b, 2).copy_from(&mu);
            total_sigma.view_mut((2 * b, 2 * b), (2, 2)).copy_from(&sigma);
        }
        let joint_value = gaussian_info_matrix(&joint)
            .norm_squared(&GaussianTangent::new(total_mu, total_sigma).unwrap())
            .unwrap();
        assert!((joint_value - separate).abs() < 1e-10 * (1.0 + separate), "{k} blocks");
    }
}

#[test]
fn mixture_correction_is_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let k = rng.random_range(2..5);
        let mut weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let components = (0..k)
            .map(|_| {
                let mu = DVector::from_fn(2, |_, _| rng.random_range(-3.0..3.0));
                GaussianState::new(DMatrix::identity(2, 2) * rng.random_range(1.0..3.0), mu).unwrap()
            })
            .collect();
        let mix = GaussianMixture::new(weights, components).unwrap();
        let (_, cov) = mixture_moments(&mix);
        let inner: DMatrix<f64> = mix
            .weights()
            .iter()
            .zip(mix.components())
            .map(|(w, c)| c.sigma() * *w)
            .fold(DMatrix::zeros(2, 2), |a, b| a + b);
        let correction = cov - inner;
        assert!(correction.symmetric_eigen().eigenvalues.min() > -1e-12);
    }
}

/// Cyclic golden-section search over each interior point.
fn coordinate_minimizer(model: &FermionicQubit, a: f64, b: f64, n: usize) -> Vec<Vec<f64>> {
    let settings = NumericSettings::default();
    let mut path: Vec<Vec<f64>> = (0..=n).map(|k| vec![a + (b - a) * k as f64 / n as f64]).collect();
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        for k in 1..n {
            let (mut lo, mut hi) = (path[k - 1][0], path[k + 1][0]);
            let cost = |x: f64, path: &mut Vec<Vec<f64>>| {
                path[k][0] = x;
                path_action(model, &path[k - 1..=k + 1], &settings).unwrap()
            };
            while hi - lo > 1e-13 {
                let x1 = hi - ratio * (hi - lo);
                let x2 = lo + ratio * (hi - lo);
                if cost(x1, &mut path) < cost(x2, &mut path) {
                    hi = x2;
                } else {
                    lo = x1;
                }
            }
            path[k][0] = 0.5 * (lo + hi);
        }
    }
    path
}

#[test]
fn bvp_agrees_with_coordinate_search() {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let (a, b, n) = (-0.6, 0.8, 8);
    let sol = geodesic_bvp(&model, &[a], &[b], n, &OptimizerConfig::default(), &settings).unwrap();
    let oracle = coordinate_minimizer(&model, a, b, n);
    let oracle_action = path_action(&model, &oracle, &settings).unwrap();
    assert!((sol.action - oracle_action).abs() < 1e-9);
    for (p, q) in sol.trajectory.thetas.iter().zip(&oracle) {
        assert!((p[0] - q[0]).abs() < 1e-5);
    }
}

#[test]
fn euler_flow_converges_at_first_order() {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let entropy = RelativeEntropyObjective::to_invariant(&model, &settings);
    let theta0 = 0.8;
    let err = |tau: f64| {
        let steps = (2.0 / tau).round() as usize;
        let traj = natural_gradient_flow(&model, &[theta0], &entropy, tau, steps, &settings).unwrap();
        let t = *traj.times.last().unwrap();
        (traj.last().unwrap()[0] - theta0 * (-t).exp()).abs()
    };
    let ratio = err(2e-2) / err(1e-2);
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn euler_step_follows_the_state_space_gradient() {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let entropy = RelativeEntropyObjective::to_invariant(&model, &settings);
    let theta = 0.6;
    let rho = model.state(&[theta]).unwrap();
    let sigma = model.structure().invariant_state();
    let x = rho.log().unwrap().into_matrix() - sigma.log().unwrap().into_matrix();
    let velocity = -model.structure().at(&rho, &settings).unwrap().neg_laplacian(&x).unwrap();
    let d = natural_gradient_direction(&model, &entropy, &[theta], &settings).unwrap()[0];
    let defect = |tau: f64| -> f64 {
        let next = model.state(&[theta + tau * d]).unwrap();
        let step: CMat = next.matrix() - rho.matrix();
        (step - velocity.scale(tau)).camax()
    };
    let (e1, e2) = (defect(1e-2), defect(5e-3));
    assert!(e1 < 1e-6, "defect {e1}");
    assert!(e2 <= e1);
}

#[test]
fn reversed_momentum_retraces_the_geodesic() {
    let settings = NumericSettings::default();
    let model = FermionicQubit::kubo_mori();
    let forward = geodesic_ivp(&model, &[-0.3], &[0.9], 1.0, 1e-3, &settings).unwrap();
    let end = forward.last().unwrap()[0];
    let g = qwass::metric::artanh_over_x(end);
    let g0 = qwass::metric::artanh_over_x(-0.3);
    let velocity_end = (g0 / g).sqrt() * 0.9 / g0;
    let back = geodesic_ivp(&model, &[end], &[-g * velocity_end], 1.0, 1e-3, &settings).unwrap();
    assert!((back.last().unwrap()[0] + 0.3).abs() < 1e-8);
}
