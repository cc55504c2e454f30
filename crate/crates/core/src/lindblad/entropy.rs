// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use super::Structure;
use crate::operator::{CMat, DensityOperator};
use crate::{Error, NumericSettings, Result};

fn same_convention(rho: &DensityOperator, sigma: &DensityOperator) -> Result<()> {
    if rho.convention() != sigma.convention() || rho.dim() != sigma.dim() {
        return Err(Error::Precondition(
            "states must share dimension and trace convention".into(),
        ));
    }
    Ok(())
}

/// `S_sigma(rho) = trace(rho (log rho - log sigma))`, with `0 log 0 = 0`.
pub fn relative_entropy(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    settings: &NumericSettings,
) -> Result<f64> {
    same_convention(rho, sigma)?;
    sigma.require_faithful(settings.faithful_eps)?;
    let rho_log_rho = rho
        .spectrum()
        .map(|x| if x > 0.0 { x * x.ln() } else { 0.0 });
    let log_sigma = sigma.log()?;
    let cross: CMat = rho.matrix() * log_sigma.matrix();
    Ok(rho.convention().trace(&(rho_log_rho - cross)).re)
}

/// `I(rho) = <nabla X, L_rho nabla X>` with `X = log rho - log sigma`.
pub fn fisher_information(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    structure: &Structure,
    settings: &NumericSettings,
) -> Result<f64> {
    same_convention(rho, sigma)?;
    rho.require_faithful(settings.faithful_eps)?;
    sigma.require_faithful(settings.faithful_eps)?;
    let x = rho.log()?.into_matrix() - sigma.log()?.into_matrix();
    Ok(structure.at(rho, settings)?.energy(&x, &x)?.re)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use nalgebra::DMatrix;

    use super::*;
    use crate::clifford::CliffordAlgebra;
    use crate::lindblad::Multiplier;
    use crate::operator::{HermitianOperator, TraceConvention};

    fn state(theta: f64) -> DensityOperator {
        DensityOperator::new(
            HermitianOperator::from_real(&DMatrix::from_row_slice(2, 2, &[1.0, theta, theta, 1.0]))
                .unwrap(),
            TraceConvention::Normalized,
        )
        .unwrap()
    }

    #[test]
    fn entropy_closed_form() {
        let s = NumericSettings::default();
        let id = state(0.0);
        for theta in [-0.7, -0.3, 0.3, 0.7_f64] {
            let r = relative_entropy(&state(theta), &id, &s).unwrap();
            let expect = 0.5 * ((1.0 - theta * theta).ln() + theta * ((1.0 + theta) / (1.0 - theta)).ln());
            assert!((r - expect).abs() < 1e-14);
        }
        assert!(relative_entropy(&id, &id, &s).unwrap().abs() < 1e-15);
    }

    #[test]
    fn pure_state_entropy_is_finite() {
        let s = NumericSettings::default();
        let r = relative_entropy(&state(1.0), &state(0.0), &s).unwrap();
        assert!((r - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn singular_reference_rejected() {
        let s = NumericSettings::default();
        assert!(relative_entropy(&state(0.1), &state(1.0), &s).is_err());
    }

    #[test]
    fn fisher_single_mode() {
        let s = NumericSettings::default();
        let st = Structure::fermionic(Arc::new(CliffordAlgebra::new(1).unwrap()), Multiplier::KuboMori);
        for theta in [-0.9, 0.25, 0.6_f64] {
            let i = fisher_information(&state(theta), &state(0.0), &st, &s).unwrap();
            assert!((i - theta * theta.atanh()).abs() < 1e-13, "{theta}: {i}");
        }
        assert!(fisher_information(&state(0.0), &state(0.0), &st, &s).unwrap().abs() < 1e-15);
    }

    #[test]
    fn entropy_decays_at_fisher_rate_along_the_flow() {
        let s = NumericSettings::default();
        let st = Structure::fermionic(Arc::new(CliffordAlgebra::new(1).unwrap()), Multiplier::KuboMori);
        let sigma = state(0.0);
        let h = 1e-5;
        for theta in [-0.7, 0.3, 0.85_f64] {
            let ds = (relative_entropy(&state(theta + h), &sigma, &s).unwrap()
                - relative_entropy(&state(theta - h), &sigma, &s).unwrap())
                / (2.0 * h);
            let rate = -theta * ds;
            let i = fisher_information(&state(theta), &sigma, &st, &s).unwrap();
            assert!((rate + i).abs() < 1e-8, "{theta}: {rate} vs {i}");
        }
    }
}
