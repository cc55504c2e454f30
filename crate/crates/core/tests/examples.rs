// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

mod clifford_calculus {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/clifford_calculus.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod depolarizing_channel {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/depolarizing_channel.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod entropy_natural_gradient {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/entropy_natural_gradient.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod fermionic_geodesic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fermionic_geodesic.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod fermionic_information_matrix {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fermionic_information_matrix.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod gaussian_transport {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gaussian_transport.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod hamiltonian_shooting {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hamiltonian_shooting.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod kubo_mori_multiplication {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kubo_mori_multiplication.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod lindblad_detailed_balance {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lindblad_detailed_balance.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod schrodinger_bridge {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/schrodinger_bridge.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod wigner_grid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wigner_grid.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}
