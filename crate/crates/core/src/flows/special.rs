// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Dilogarithm, the odd function `zeta(x) = (Li2(x) - Li2(-x)) / 2` and the
//! single-mode fermionic geodesics built from them.

use std::f64::consts::PI;

use crate::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    for k in 1..200 {
        let term = pow / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        pow *= x;
    }
    sum
}

/// Real dilogarithm `Li2(x) = sum_k x^k / k^2` for `x <= 1`.
pub fn dilog(x: f64) -> Result<f64> {
    if !(x <= 1.0) {
        return Err(Error::Domain(format!("real dilogarithm needs x <= 1, got {x}")));
    }
    Ok(if x == 1.0 {
        PI2_6
    } else if x.abs() <= 0.5 {
        dilog_series(x)
    } else if x > 0.5 {
        PI2_6 - x.ln() * (-x).ln_1p() - dilog_series(1.0 - x)
    } else if x >= -1.0 {
        let l = (-x).ln_1p();
        -dilog_series(x / (x - 1.0)) - 0.5 * l * l
    } else {
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - dilog(1.0 / x)?
    })
}

/// `zeta(x) = (Li2(x) - Li2(-x)) / 2 = int_0^x artanh(u) / u du` on `[-1, 1]`.
pub fn zeta_fn(x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("zeta needs |x| <= 1, got {x}")));
    }
    Ok(0.5 * (dilog(x)? - dilog(-x)?))
}

/// Inverse of [`zeta_fn`] on `(-pi^2/8, pi^2/8)` by bracketed Newton.
pub fn zeta_inverse(y: f64) -> Result<f64> {
    let top = PI * PI / 8.0;
    if !(y.abs() < top) {
        return Err(Error::Domain(format!("zeta^-1 needs |y| < pi^2/8, got {y}")));
    }
    bracketed_newton(y, -1.0, 1.0, |x| {
        Ok((zeta_fn(x)?, super::artanh_over_x(x)))
    })
}

/// Solves `f(x) = y` for increasing `f` on `[lo, hi]`; `f` returns `(f, f')`.
pub(crate) fn bracketed_newton(
    y: f64,
    mut lo: f64,
    mut hi: f64,
    f: impl Fn(f64) -> Result<(f64, f64)>,
) -> Result<f64> {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, d) = f(x)?;
        let r = v - y;
        if r == 0.0 {
            return Ok(x);
        }
        if r > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - r / d;
        let next = if d.is_finite() && d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 1e-15 * x.abs().max(1e-3) || hi - lo <= 1e-16 {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

fn check_open_unit(theta: f64) -> Result<()> {
    if !(theta.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "fermionic parameter must satisfy |theta| < 1, got {theta}"
        )));
    }
    Ok(())
}

/// `zeta^-1(t zeta(theta1) + (1 - t) zeta(theta0))`.
pub fn analytic_fermionic_geodesic(theta0: f64, theta1: f64, t: f64) -> Result<f64> {
    check_open_unit(theta0)?;
    check_open_unit(theta1)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t must lie in [0, 1], got {t}")));
    }
    if t == 0.0 {
        return Ok(theta0);
    }
    if t == 1.0 {
        return Ok(theta1);
    }
    zeta_inverse(t * zeta_fn(theta1)? + (1.0 - t) * zeta_fn(theta0)?)
}

fn sqrt_metric(u: f64) -> f64 {
    super::artanh_over_x(u).sqrt()
}

/// `F(x) = int_0^x sqrt(artanh(u) / u) du`, the arc length of the
/// Kubo-Mori single-mode metric.
pub fn fermionic_arc_length(x: f64) -> Result<f64> {
    check_open_unit(x)?;
    Ok(super::quadrature::integrate(sqrt_metric, 0.0, x, 1e-15))
}

/// Constant-speed geodesic of `G(theta) = artanh(theta) / theta`:
/// `F(theta(t)) = t F(theta1) + (1 - t) F(theta0)`.
pub fn exact_fermionic_geodesic(theta0: f64, theta1: f64, t: f64) -> Result<f64> {
    let f0 = fermionic_arc_length(theta0)?;
    let f1 = fermionic_arc_length(theta1)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t must lie in [0, 1], got {t}")));
    }
    exact_geodesic_from(f0, f1, t)
}

fn exact_geodesic_from(f0: f64, f1: f64, t: f64) -> Result<f64> {
    let target = t * f1 + (1.0 - t) * f0;
    bracketed_newton(target, -1.0 + 1e-15, 1.0 - 1e-15, |x| {
        Ok((fermionic_arc_length(x)?, sqrt_metric(x)))
    })
}

/// Samples of [`exact_fermionic_geodesic`] at `t_k = k / n`.
pub fn exact_fermionic_path(theta0: f64, theta1: f64, n: usize) -> Result<Vec<f64>> {
    let f0 = fermionic_arc_length(theta0)?;
    let f1 = fermionic_arc_length(theta1)?;
    (0..=n)
        .map(|k| match k {
            0 => Ok(theta0),
            _ if k == n => Ok(theta1),
            _ => exact_geodesic_from(f0, f1, k as f64 / n as f64),
        })
        .collect()
}

/// Samples of [`analytic_fermionic_geodesic`] at `t_k = k / n`.
pub fn analytic_fermionic_path(theta0: f64, theta1: f64, n: usize) -> Result<Vec<f64>> {
    (0..=n)
        .map(|k| analytic_fermionic_geodesic(theta0, theta1, k as f64 / n as f64))
        .collect()
}

/// Squared geodesic distance `(F(theta1) - F(theta0))^2`.
pub fn fermionic_distance_squared(theta0: f64, theta1: f64) -> Result<f64> {
    let d = fermionic_arc_length(theta1)? - fermionic_arc_length(theta0)?;
    Ok(d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilog_special_values() {
        assert!((dilog(1.0).unwrap() - PI2_6).abs() < 1e-15);
        assert!((dilog(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-15);
        let l2 = 2f64.ln();
        assert!((dilog(0.5).unwrap() - (PI * PI / 12.0 - 0.5 * l2 * l2)).abs() < 1e-15);
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert!(dilog(1.5).is_err());
    }

    #[test]
    fn dilog_branches_agree_with_series() {
        for x in [0.6, 0.75, 0.9, -0.6, -0.8, -0.95_f64] {
            let series: f64 = (1..200_000).map(|k| x.powi(k) / (k as f64 * k as f64)).sum();
            assert!((dilog(x).unwrap() - series).abs() < 1e-10, "{x}");
        }
    }

    #[test]
    fn zeta_is_odd_and_inverts() {
        for x in [0.0, 0.1, 0.5, 0.9, 0.999_f64] {
            let z = zeta_fn(x).unwrap();
            assert!((z + zeta_fn(-x).unwrap()).abs() < 1e-15);
            assert!((zeta_inverse(z).unwrap() - x).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_endpoints_and_midpoint() {
        for a in [0.5, 0.9, 0.999] {
            assert_eq!(analytic_fermionic_geodesic(-a, a, 0.0).unwrap(), -a);
            assert_eq!(analytic_fermionic_geodesic(-a, a, 1.0).unwrap(), a);
            assert!(analytic_fermionic_geodesic(-a, a, 0.5).unwrap().abs() < 1e-14);
            assert!(exact_fermionic_geodesic(-a, a, 0.5).unwrap().abs() < 1e-14);
        }
        assert!(analytic_fermionic_geodesic(-1.0, 0.5, 0.3).is_err());
    }

    #[test]
    fn arc_length_is_odd_and_near_linear_at_zero() {
        let f = fermionic_arc_length(1e-3).unwrap();
        assert!((f - (1e-3 + 1e-9 / 18.0)).abs() < 1e-15);
        assert!((fermionic_arc_length(-0.7).unwrap() + fermionic_arc_length(0.7).unwrap()).abs() < 1e-15);
    }
}
