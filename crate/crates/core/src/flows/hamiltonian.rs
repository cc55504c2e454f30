// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use super::FlowTrajectory;
use crate::metric::InformationMetric;
use crate::{Error, NumericSettings, Result};

fn inverse(g: DMatrix<f64>) -> Result<DMatrix<f64>> {
    g.clone()
        .cholesky()
        .map(|c| c.inverse())
        .or_else(|| g.try_inverse())
        .ok_or_else(|| Error::Precondition("information matrix is singular".into()))
}

fn kinetic<M: InformationMetric + ?Sized>(
    metric: &M,
    theta: &[f64],
    p: &DVector<f64>,
    settings: &NumericSettings,
) -> Result<f64> {
    let gi = inverse(metric.info_matrix(theta, settings)?)?;
    Ok(0.5 * p.dot(&(gi * p)))
}

/// `H(theta, P) = <P, G_W(theta)^-1 P> / 2`.
pub fn hamiltonian<M: InformationMetric + ?Sized>(
    metric: &M,
    theta: &[f64],
    p: &[f64],
    settings: &NumericSettings,
) -> Result<f64> {
    kinetic(metric, theta, &DVector::from_column_slice(p), settings)
}

fn rhs<M: InformationMetric + ?Sized>(
    metric: &M,
    theta: &[f64],
    p: &DVector<f64>,
    settings: &NumericSettings,
) -> Result<(DVector<f64>, DVector<f64>)> {
    if !metric.contains(theta) {
        return Err(Error::Boundary {
            theta: theta.to_vec(),
        });
    }
    let gi = inverse(metric.info_matrix(theta, settings)?)?;
    let dtheta = &gi * p;
    let mut dp = DVector::zeros(theta.len());
    for i in 0..theta.len() {
        let h = settings.fd_step(theta[i]);
        let mut plus = theta.to_vec();
        let mut minus = theta.to_vec();
        plus[i] += h;
        minus[i] -= h;
        dp[i] = -(kinetic(metric, &plus, p, settings)? - kinetic(metric, &minus, p, settings)?) / (2.0 * h);
    }
    Ok((dtheta, dp))
}

/// RK4 integration of `theta' = G_W^-1 P`, `P' = -d_theta <P, G_W^-1 P> / 2`
/// on `[0, t_end]`.
///
/// Diagnostics hold `H`. If a stage leaves the domain the trajectory is
/// truncated at the last completed step and `exited` is set.
pub fn geodesic_ivp<M: InformationMetric + ?Sized>(
    metric: &M,
    theta0: &[f64],
    p0: &[f64],
    t_end: f64,
    dt: f64,
    settings: &NumericSettings,
) -> Result<FlowTrajectory> {
    if theta0.len() != metric.dim() || p0.len() != metric.dim() {
        return Err(Error::DimensionMismatch {
            expected: metric.dim(),
            found: theta0.len().max(p0.len()),
        });
    }
    if !metric.contains(theta0) {
        return Err(Error::Boundary {
            theta: theta0.to_vec(),
        });
    }
    if !(dt > 0.0) || !(t_end >= 0.0) {
        return Err(Error::Domain(format!("need dt > 0 and t_end >= 0, got {dt}, {t_end}")));
    }
    let steps = (t_end / dt).round().max(if t_end > 0.0 { 1.0 } else { 0.0 }) as usize;
    let h = if steps > 0 { t_end / steps as f64 } else { 0.0 };
    let mut theta = DVector::from_column_slice(theta0);
    let mut p = DVector::from_column_slice(p0);
    let mut traj = FlowTrajectory {
        times: vec![0.0],
        thetas: vec![theta0.to_vec()],
        diagnostics: vec![kinetic(metric, theta0, &p, settings)?],
        exited: false,
    };
    for k in 1..=steps {
        let stage = |th: &DVector<f64>, pp: &DVector<f64>| rhs(metric, th.as_slice(), pp, settings);
        let step = (|| -> Result<(DVector<f64>, DVector<f64>)> {
            let (a1, b1) = stage(&theta, &p)?;
            let (a2, b2) = stage(&(&theta + &a1 * (0.5 * h)), &(&p + &b1 * (0.5 * h)))?;
            let (a3, b3) = stage(&(&theta + &a2 * (0.5 * h)), &(&p + &b2 * (0.5 * h)))?;
            let (a4, b4) = stage(&(&theta + &a3 * h), &(&p + &b3 * h))?;
            let nt = &theta + (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
            let np = &p + (b1 + b2 * 2.0 + b3 * 2.0 + b4) * (h / 6.0);
            if !metric.contains(nt.as_slice()) {
                return Err(Error::Boundary {
                    theta: nt.as_slice().to_vec(),
                });
            }
            Ok((nt, np))
        })();
        match step {
            Ok((nt, np)) => {
                theta = nt;
                p = np;
                traj.times.push(k as f64 * h);
                traj.thetas.push(theta.as_slice().to_vec());
                traj.diagnostics.push(kinetic(metric, theta.as_slice(), &p, settings)?);
            }
            Err(Error::Boundary { .. }) => {
                traj.exited = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(traj)
}
