// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(qwass::cli::run(std::env::args_os()));
}
