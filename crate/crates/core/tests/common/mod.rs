// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qwass::clifford::CliffordAlgebra;
use qwass::flows::quadrature::gauss_legendre;
use qwass::operator::{CMat, DensityOperator, HermitianOperator, TraceConvention};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, d: usize) -> CMat {
    CMat::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `G G^* + floor`, normalized; the spectrum is bounded away from zero.
pub fn random_density(rng: &mut ChaCha8Rng, d: usize, floor: f64) -> DensityOperator {
    let g = gaussian_matrix(rng, d);
    let mut m = &g * g.adjoint() + CMat::identity(d, d).scale(floor);
    let tr = m.trace().re;
    m = m.unscale(tr);
    let m = (&m + m.adjoint()).scale(0.5);
    DensityOperator::new(HermitianOperator::new(m).unwrap(), TraceConvention::Standard).unwrap()
}

/// Faithful state in the span of the Clifford basis, with normalized trace
/// one: `1 + sum_alpha c_alpha B_alpha` over the self-adjoint basis.
pub fn random_clifford_state(rng: &mut ChaCha8Rng, alg: &CliffordAlgebra, scale: f64) -> DensityOperator {
    let basis = alg.hermitian_basis();
    let norm = (basis.len() as f64).sqrt();
    let mut m = CMat::identity(alg.dim(), alg.dim());
    for b in basis.elements().iter().skip(1) {
        let x: f64 = rng.random_range(-1.0..1.0);
        m += b.scale(scale * x / norm);
    }
    let m = (&m + m.adjoint()).scale(0.5);
    DensityOperator::new(HermitianOperator::new(m).unwrap(), TraceConvention::Normalized).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> CMat {
    let g = gaussian_matrix(rng, d);
    (&g + g.adjoint()).scale(0.5)
}

/// `rho^s` from a plain eigendecomposition.
pub fn matrix_power(rho: &CMat, s: f64) -> CMat {
    let eig = rho.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| c(x.powf(s))));
    v * d * v.adjoint()
}

/// `int_0^1 rho1^(1-s) T rho2^s ds` by `n`-node Gauss-Legendre quadrature.
pub fn kubo_mori_quadrature(rho1: &CMat, rho2: &CMat, t: &CMat, n: usize) -> CMat {
    let (nodes, weights) = gauss_legendre(n);
    let d = t.nrows();
    let mut acc = CMat::zeros(d, d);
    for (x, w) in nodes.iter().zip(&weights) {
        let s = 0.5 * (x + 1.0);
        acc += (matrix_power(rho1, 1.0 - s) * t * matrix_power(rho2, s)).scale(0.5 * w);
    }
    acc
}

pub fn hs(a: &CMat, b: &CMat) -> Complex64 {
    (a.adjoint() * b).trace()
}

pub fn max_abs(v: &DVector<f64>) -> f64 {
    v.amax()
}
