// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Non-commutative multiplication by a density.
//!
//! Both operators act diagonally in the product of the eigenbases of their
//! states: an input `T` is rotated into the eigenbases, multiplied entrywise
//! by a closed-form kernel and rotated back.

use super::{c, CMat, DensityOperator, Spectrum};
use crate::{NumericSettings, Result};

/// Logarithmic mean `(a - b) / (ln a - ln b)`, equal to `a` when `a == b`
/// and to zero when either argument vanishes.
pub fn log_mean(a: f64, b: f64, coincidence_rel: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    let scale = a.max(b);
    if (a - b).abs() < coincidence_rel * scale {
        return 0.5 * (a + b);
    }
    let d = a - b;
    d / (d / b).ln_1p()
}

/// A linear map `T -> L(T)` together with its inverse.
pub trait Multiplication: Send + Sync {
    fn apply(&self, t: &CMat) -> CMat;
    fn apply_inverse(&self, t: &CMat) -> CMat;
}

/// `T -> int_0^1 (a rho1)^{1-s} T (b rho2)^s ds` with scalar weights `a, b`.
///
/// With `a = b = 1` this is the Kubo-Mori operator; the weighted form with
/// `a = e^{omega/2}`, `b = e^{-omega/2}` is the detailed-balance kernel.
#[derive(Debug, Clone)]
pub struct KuboMori {
    left: Spectrum,
    right: Spectrum,
    kernel: CMat,
}

impl KuboMori {
    pub fn new(rho1: &DensityOperator, rho2: &DensityOperator, settings: &NumericSettings) -> Self {
        Self::weighted(rho1, rho2, 1.0, 1.0, settings)
    }

    pub fn weighted(
        rho1: &DensityOperator,
        rho2: &DensityOperator,
        left_weight: f64,
        right_weight: f64,
        settings: &NumericSettings,
    ) -> Self {
        let left = rho1.spectrum().clone();
        let right = rho2.spectrum().clone();
        let (n, m) = (left.values.len(), right.values.len());
        let kernel = CMat::from_fn(n, m, |i, k| {
            c(log_mean(
                left_weight * left.values[i],
                right_weight * right.values[k],
                settings.coincidence_rel,
            ))
        });
        Self {
            left,
            right,
            kernel,
        }
    }

    /// Entrywise kernel in the product eigenbasis.
    pub fn kernel(&self) -> &CMat {
        &self.kernel
    }

    fn rotate_in(&self, t: &CMat) -> CMat {
        self.left.vectors.adjoint() * t * &self.right.vectors
    }

    fn rotate_out(&self, t: &CMat) -> CMat {
        &self.left.vectors * t * self.right.vectors.adjoint()
    }
}

impl Multiplication for KuboMori {
    fn apply(&self, t: &CMat) -> CMat {
        let tt = self.rotate_in(t).component_mul(&self.kernel);
        self.rotate_out(&tt)
    }

    fn apply_inverse(&self, t: &CMat) -> CMat {
        let tt = self.rotate_in(t).zip_map(&self.kernel, |x, k| x / k);
        self.rotate_out(&tt)
    }
}

/// `T -> (T rho + rho T) / 2`.
#[derive(Debug, Clone)]
pub struct AntiCommutator {
    spectrum: Spectrum,
    kernel: CMat,
}

impl AntiCommutator {
    pub fn new(rho: &DensityOperator) -> Self {
        let spectrum = rho.spectrum().clone();
        let v = &spectrum.values;
        let kernel = CMat::from_fn(v.len(), v.len(), |i, j| c(0.5 * (v[i] + v[j])));
        Self { spectrum, kernel }
    }
}

impl Multiplication for AntiCommutator {
    fn apply(&self, t: &CMat) -> CMat {
        let tt = self.spectrum.to_eigenbasis(t).component_mul(&self.kernel);
        self.spectrum.from_eigenbasis(&tt)
    }

    fn apply_inverse(&self, t: &CMat) -> CMat {
        let tt = self
            .spectrum
            .to_eigenbasis(t)
            .zip_map(&self.kernel, |x, k| x / k);
        self.spectrum.from_eigenbasis(&tt)
    }
}

/// Kubo-Mori operator `L_(rho1, rho2)` or its inverse applied to `t`.
///
/// The inverse uses the reciprocal kernel `(ln l - ln m) / (l - m)` and
/// requires both states to be faithful.
pub fn kubo_mori_apply(
    rho1: &DensityOperator,
    rho2: &DensityOperator,
    t: &CMat,
    inverse: bool,
    settings: &NumericSettings,
) -> Result<CMat> {
    if inverse {
        rho1.require_faithful(settings.faithful_eps)?;
        rho2.require_faithful(settings.faithful_eps)?;
    }
    let km = KuboMori::new(rho1, rho2, settings);
    Ok(if inverse {
        km.apply_inverse(t)
    } else {
        km.apply(t)
    })
}

/// Symmetrized product `{T, rho} / 2` or the solution `X` of `{X, rho} / 2 = T`.
pub fn anticommutator_apply(
    rho: &DensityOperator,
    t: &CMat,
    inverse: bool,
    settings: &NumericSettings,
) -> Result<CMat> {
    if inverse {
        rho.require_faithful(settings.faithful_eps)?;
    }
    let ac = AntiCommutator::new(rho);
    Ok(if inverse {
        ac.apply_inverse(t)
    } else {
        ac.apply(t)
    })
}
