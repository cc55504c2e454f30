// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    fn apply(&self, f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        h * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
    }
}

/// Adaptive Gauss-Legendre integration of `f` over `[a, b]`, bisecting until
/// a 20-node and a 40-node rule agree to `tol` (relative to the total).
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let coarse = Rule::new(20);
    let fine = Rule::new(40);
    let mut stack = vec![(a, b, 0usize)];
    let mut total = 0.0;
    let scale = fine.apply(&f, a, b).abs().max(1e-300);
    while let Some((lo, hi, depth)) = stack.pop() {
        let c = coarse.apply(&f, lo, hi);
        let g = fine.apply(&f, lo, hi);
        if (g - c).abs() <= tol * scale || depth >= 40 {
            total += g;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_moments() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "{n}");
            let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
            if n >= 2 {
                assert!((m2 - 2.0 / 3.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn adaptive_log_singularity() {
        let v = integrate(|u| (-u.ln()).sqrt(), 1e-300, 1.0, 1e-14);
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-10);
        assert!((integrate(f64::exp, 0.0, 1.0, 1e-15) - (1f64.exp() - 1.0)).abs() < 1e-15);
    }
}
