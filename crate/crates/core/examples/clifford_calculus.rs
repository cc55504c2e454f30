// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

// Builds the two-mode Clifford algebra, checks the anticommutation
// relations and shows that the graded generator equals `-4 N`.

use num_complex::Complex64;
use qwass::clifford::CliffordAlgebra;
use qwass::operator::CMat;

pub fn run_example() -> qwass::Result<()> {
    let alg = CliffordAlgebra::new(2)?;
    println!("modes {} dim {} basis {}", alg.modes(), alg.dim(), alg.basis_len());

    let id = CMat::identity(alg.dim(), alg.dim());
    for i in 0..alg.modes() {
        for j in 0..alg.modes() {
            let (qi, qj) = (alg.generator(i), alg.generator(j));
            let anti = qi * qj + qj * qi;
            let expected = if i == j { id.scale(2.0) } else { CMat::zeros(4, 4) };
            let err = (anti - expected).camax();
            println!("{{Q_{}, Q_{}}} residual {err:.1e}", i + 1, j + 1);
            assert!(err < 1e-14);
        }
    }

    let mut worst = 0.0f64;
    for k in 0..alg.basis_len() {
        let a = alg.element(k).map(|z| z * Complex64::new(0.3, -1.1));
        let lhs = alg.graded_generator(&a)?;
        let rhs = alg.number_operator(&a)?.scale(-4.0);
        worst = worst.max((lhs - rhs).camax());
    }
    println!("max |L A + 4 N A| over the basis: {worst:.1e}");
    assert!(worst < 1e-12);
    println!("number spectrum {:?}", alg.number_eigenvalues());
    Ok(())
}

#[allow(dead_code)]
fn main() -> qwass::Result<()> {
    run_example()
}
