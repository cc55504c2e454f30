// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;

use crate::{Error, Result};

/// Solves `S Sigma + Sigma S = Q` for symmetric `S`, with `Sigma` symmetric
/// positive definite.
///
/// In the eigenbasis of `Sigma` the solution is `Q~_ij / (s_i + s_j)`.
pub fn lyapunov_solve(sigma: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = sigma.nrows();
    if !sigma.is_square() || q.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.nrows(),
        });
    }
    let sym = (sigma + sigma.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    if let Some(&bad) = eig.eigenvalues.iter().find(|&&s| s <= 0.0) {
        return Err(Error::MatrixFunctionDomain {
            function: "lyapunov (Sigma must be positive definite)",
            eigenvalue: bad,
        });
    }
    let u = &eig.eigenvectors;
    let qt = u.transpose() * q * u;
    let s = &eig.eigenvalues;
    let st = DMatrix::from_fn(n, n, |i, j| qt[(i, j)] / (s[i] + s[j]));
    let out = u * st * u.transpose();
    Ok((&out + out.transpose()) * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_halves() {
        let q = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, -3.0]);
        let s = lyapunov_solve(&DMatrix::identity(2, 2), &q).unwrap();
        assert!((s - &q * 0.5).norm() < 1e-15);
    }

    #[test]
    fn diagonal_multiplier() {
        let sigma = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0]));
        let q = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let s = lyapunov_solve(&sigma, &q).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]);
        assert!((s - expected).norm() < 1e-15);
    }

    #[test]
    fn rejects_indefinite() {
        let sigma = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(lyapunov_solve(&sigma, &DMatrix::identity(2, 2)).is_err());
    }
}
