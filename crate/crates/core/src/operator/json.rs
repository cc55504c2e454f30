// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CMat;
use crate::{Error, Result};

/// Dense complex matrix as separate row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

impl OperatorJson {
    pub fn from_matrix(m: &CMat) -> Self {
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            dim: m.nrows(),
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        let n = self.dim;
        let shape_ok = |rows: &[Vec<f64>]| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.re) || !(self.im.is_empty() || shape_ok(&self.im)) {
            return Err(Error::Size(format!(
                "operator arrays must be {n}x{n} row-major"
            )));
        }
        Ok(CMat::from_fn(n, n, |i, j| {
            let im = self.im.get(i).map_or(0.0, |r| r[j]);
            Complex64::new(self.re[i][j], im)
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpTermJson {
    #[serde(rename = "V")]
    pub v: OperatorJson,
    pub omega: f64,
    pub adjoint: usize,
}

/// `{ "sigma": operator, "terms": [{ "V": operator, "omega": real, "adjoint": index }] }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub sigma: OperatorJson,
    pub terms: Vec<JumpTermJson>,
}
