// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria for `qwass`. Everything lives in the `acceptance`
//! test target; run it with `cargo test -p qwass-acceptance`.
