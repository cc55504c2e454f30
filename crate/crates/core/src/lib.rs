// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

pub mod cli;
pub mod clifford;
pub mod error;
pub mod flows;
pub mod gaussian;
pub mod lindblad;
pub mod metric;
pub mod operator;
pub mod settings;

pub use error::{Error, Result};
pub use settings::NumericSettings;
