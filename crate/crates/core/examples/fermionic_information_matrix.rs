// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

// Information matrix of the single-mode fermionic family
// `rho(theta) = (1 + theta Q) / 2` under both multiplications.

use qwass::metric::{artanh_over_x, wasserstein_info_matrix, FermionicQubit};
use qwass::NumericSettings;

pub fn run_example() -> qwass::Result<()> {
    let settings = NumericSettings::default();
    let km = FermionicQubit::kubo_mori();
    let ac = FermionicQubit::anticommutator();
    println!("{:>6} {:>14} {:>14} {:>8}", "theta", "G_W (KM)", "artanh/theta", "G_W (AC)");
    for k in -9..=9 {
        let theta = k as f64 / 10.0;
        let g_km = wasserstein_info_matrix(&km, &[theta], &settings)?.matrix[(0, 0)];
        let g_ac = wasserstein_info_matrix(&ac, &[theta], &settings)?.matrix[(0, 0)];
        let exact = artanh_over_x(theta);
        println!("{theta:>6.2} {g_km:>14.10} {exact:>14.10} {g_ac:>8.5}");
        assert!((g_km - exact).abs() < 1e-8);
        assert!((g_ac - 1.0).abs() < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
