// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimization of a discretized path functional with pinned endpoints.
//!
//! A path is a list of `N + 1` points in `R^p`; the functional is a sum of
//! segment costs `c_k(x_k, x_(k+1))`. Two optimizers are provided: a
//! deterministic preconditioned descent with finite-difference gradients and
//! a seeded simulated-annealing Monte-Carlo search.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A discretized path functional.
pub trait PathProblem: Sync {
    /// Dimension `p` of a path point.
    fn point_dim(&self) -> usize;

    /// Number of segments `N`.
    fn segments(&self) -> usize;

    /// Nonnegative cost of segment `k`, from `a = x_k` to `b = x_(k+1)`.
    fn segment_cost(&self, k: usize, a: &[f64], b: &[f64]) -> Result<f64>;

    /// Whether a point satisfies the problem's constraints.
    fn feasible(&self, x: &[f64]) -> bool;

    /// Moves `x` onto the feasible set where possible; returns feasibility.
    fn project(&self, x: &mut [f64]) -> bool {
        self.feasible(x)
    }

    /// Local quadratic model `B_k` with `c_k ~ <dx, B_k dx>`, used to
    /// precondition the descent direction.
    fn preconditioner_block(&self, _k: usize, _x: &[f64]) -> Result<Option<DMatrix<f64>>> {
        Ok(None)
    }

    /// Central-difference step for coordinate value `v`.
    fn fd_step(&self, v: f64) -> f64 {
        1e-6 * v.abs().max(1.0)
    }
}

/// Optimizer selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum OptimizerMode {
    /// Preconditioned projected descent.
    #[default]
    #[serde(rename = "grad")]
    Gradient,
    /// Simulated annealing with Metropolis acceptance.
    #[serde(rename = "mc")]
    MonteCarlo,
}

impl std::str::FromStr for OptimizerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grad" => Ok(Self::Gradient),
            "mc" => Ok(Self::MonteCarlo),
            other => Err(Error::Precondition(format!(
                "unknown optimizer mode `{other}` (expected grad or mc)"
            ))),
        }
    }
}

/// Optimizer parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub mode: OptimizerMode,
    /// Descent iterations (gradient mode).
    pub max_iter: usize,
    /// Relative action decrease below which descent stops.
    pub tol: f64,
    /// Mandatory in Monte-Carlo mode.
    pub seed: Option<u64>,
    /// Annealing epochs.
    pub epochs: usize,
    /// Proposals per epoch; zero means twenty per interior point.
    pub sweeps: usize,
    /// Initial proposal width relative to the endpoint separation.
    pub initial_step: f64,
    /// Initial temperature; `None` picks one percent of the mean segment cost.
    pub initial_temperature: Option<f64>,
    /// Per-epoch factor applied to the proposal width and temperature.
    pub decay: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            mode: OptimizerMode::Gradient,
            max_iter: 500,
            tol: 1e-14,
            seed: None,
            epochs: 200,
            sweeps: 0,
            initial_step: 0.05,
            initial_temperature: None,
            decay: 0.95,
        }
    }
}

impl OptimizerConfig {
    pub fn monte_carlo(seed: u64) -> Self {
        Self {
            mode: OptimizerMode::MonteCarlo,
            seed: Some(seed),
            ..Self::default()
        }
    }
}

/// Result of a path optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSolution {
    pub path: Vec<Vec<f64>>,
    pub action: f64,
    /// Best action after each iteration or epoch; non-increasing.
    pub action_trace: Vec<f64>,
    pub iterations: usize,
    /// False when the iteration budget ran out first.
    pub converged: bool,
}

/// Points `a + t_k (b - a)`, `t_k = k / n`, ending exactly at `b`.
pub fn linear_path(a: &[f64], b: &[f64], n: usize) -> Vec<Vec<f64>> {
    (0..=n)
        .map(|k| {
            if k == n {
                return b.to_vec();
            }
            let t = k as f64 / n as f64;
            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
        })
        .collect()
}

/// Total functional value of `path`.
pub fn path_value<P: PathProblem + ?Sized>(problem: &P, path: &[Vec<f64>]) -> Result<f64> {
    (0..path.len() - 1)
        .into_par_iter()
        .map(|k| problem.segment_cost(k, &path[k], &path[k + 1]))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.iter().sum())
}

/// Minimizes the path functional starting from the straight line.
pub fn optimize_path<P: PathProblem + ?Sized>(
    problem: &P,
    start: &[f64],
    end: &[f64],
    config: &OptimizerConfig,
) -> Result<PathSolution> {
    optimize_path_from(problem, linear_path(start, end, problem.segments()), config)
}

/// Minimizes the path functional from an explicit initial path.
pub fn optimize_path_from<P: PathProblem + ?Sized>(
    problem: &P,
    mut path: Vec<Vec<f64>>,
    config: &OptimizerConfig,
) -> Result<PathSolution> {
    let n = problem.segments();
    let p = problem.point_dim();
    if n == 0 || path.len() != n + 1 {
        return Err(Error::Size(format!(
            "path needs {} points for {} segments, got {}",
            n + 1,
            n,
            path.len()
        )));
    }
    if let Some(bad) = path.iter().find(|x| x.len() != p) {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: bad.len(),
        });
    }
    for (k, x) in path.iter_mut().enumerate() {
        let ok = if k == 0 || k == n {
            problem.feasible(x)
        } else {
            problem.feasible(x) || problem.project(x)
        };
        if !ok {
            return Err(Error::Infeasible { step: k });
        }
    }
    match config.mode {
        OptimizerMode::Gradient => descend(problem, path, config),
        OptimizerMode::MonteCarlo => {
            let seed = config.seed.ok_or_else(|| {
                Error::Precondition("Monte-Carlo mode requires an explicit seed".into())
            })?;
            anneal(problem, path, config, seed)
        }
    }
}

fn local_cost<P: PathProblem + ?Sized>(problem: &P, path: &[Vec<f64>], k: usize, x: &[f64]) -> Result<f64> {
    Ok(problem.segment_cost(k - 1, &path[k - 1], x)? + problem.segment_cost(k, x, &path[k + 1])?)
}

fn gradient<P: PathProblem + ?Sized>(problem: &P, path: &[Vec<f64>]) -> Vec<f64> {
    let n = problem.segments();
    let p = problem.point_dim();
    let rows: Vec<Vec<f64>> = (1..n)
        .into_par_iter()
        .map(|k| {
            let mut row = vec![0.0; p];
            let mut x = path[k].clone();
            for i in 0..p {
                let h = problem.fd_step(path[k][i]);
                x[i] = path[k][i] + h;
                let plus = local_cost(problem, path, k, &x).ok();
                x[i] = path[k][i] - h;
                let minus = local_cost(problem, path, k, &x).ok();
                x[i] = path[k][i];
                let centre = || local_cost(problem, path, k, &x).ok();
                row[i] = match (plus, minus) {
                    (Some(a), Some(b)) => (a - b) / (2.0 * h),
                    (Some(a), None) => centre().map_or(0.0, |c| (a - c) / h),
                    (None, Some(b)) => centre().map_or(0.0, |c| (c - b) / h),
                    (None, None) => 0.0,
                };
            }
            row
        })
        .collect();
    rows.concat()
}

fn block_tridiagonal_solve(
    diag: &[DMatrix<f64>],
    upper: &[DMatrix<f64>],
    rhs: &[DVector<f64>],
) -> Option<Vec<DVector<f64>>> {
    let m = diag.len();
    let mut dp: Vec<DMatrix<f64>> = Vec::with_capacity(m);
    let mut y: Vec<DVector<f64>> = Vec::with_capacity(m);
    dp.push(diag[0].clone());
    y.push(rhs[0].clone());
    for k in 1..m {
        let lu = dp[k - 1].clone().lu();
        let l = lu.solve(&upper[k - 1])?.transpose();
        dp.push(&diag[k] - &l * &upper[k - 1]);
        y.push(&rhs[k] - &l * &y[k - 1]);
    }
    let mut x = vec![DVector::zeros(0); m];
    x[m - 1] = dp[m - 1].clone().lu().solve(&y[m - 1])?;
    for k in (0..m - 1).rev() {
        let r = &y[k] - &upper[k] * &x[k + 1];
        x[k] = dp[k].clone().lu().solve(&r)?;
    }
    Some(x)
}

fn preconditioned_direction<P: PathProblem + ?Sized>(
    problem: &P,
    path: &[Vec<f64>],
    grad: &[f64],
) -> Result<Vec<f64>> {
    let n = problem.segments();
    let p = problem.point_dim();
    let blocks: Vec<Option<DMatrix<f64>>> = (0..n)
        .into_par_iter()
        .map(|k| problem.preconditioner_block(k, &path[k]))
        .collect::<Result<_>>()?;
    let fallback = || grad.iter().map(|g| -g).collect::<Vec<f64>>();
    if n < 2 {
        return Ok(Vec::new());
    }
    if blocks.iter().any(|b| b.is_none()) {
        return Ok(fallback());
    }
    let b: Vec<DMatrix<f64>> = blocks.into_iter().map(|b| b.unwrap()).collect();
    let diag: Vec<DMatrix<f64>> = (1..n).map(|k| (&b[k - 1] + &b[k]) * 2.0).collect();
    let upper: Vec<DMatrix<f64>> = (1..n - 1).map(|k| &b[k] * -2.0).collect();
    let rhs: Vec<DVector<f64>> = (0..n - 1)
        .map(|k| -DVector::from_column_slice(&grad[k * p..(k + 1) * p]))
        .collect();
    Ok(match block_tridiagonal_solve(&diag, &upper, &rhs) {
        Some(x) => x.iter().flat_map(|v| v.iter().copied()).collect(),
        None => fallback(),
    })
}

fn descend<P: PathProblem + ?Sized>(
    problem: &P,
    mut path: Vec<Vec<f64>>,
    config: &OptimizerConfig,
) -> Result<PathSolution> {
    let n = problem.segments();
    let p = problem.point_dim();
    let mut action = path_value(problem, &path)?;
    let mut trace = vec![action];
    let mut converged = n < 2 || action == 0.0;
    let mut iterations = 0;
    while !converged && iterations < config.max_iter {
        iterations += 1;
        let g = gradient(problem, &path);
        let mut d = preconditioned_direction(problem, &path, &g)?;
        let mut slope: f64 = g.iter().zip(&d).map(|(a, b)| a * b).sum();
        if !(slope < 0.0) {
            d = g.iter().map(|x| -x).collect();
            slope = -g.iter().map(|x| x * x).sum::<f64>();
        }
        if slope == 0.0 {
            converged = true;
            break;
        }
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut cand = path.clone();
            let mut feasible = true;
            for k in 1..n {
                for i in 0..p {
                    cand[k][i] += alpha * d[(k - 1) * p + i];
                }
                if !problem.feasible(&cand[k]) && !problem.project(&mut cand[k]) {
                    feasible = false;
                    break;
                }
            }
            if feasible {
                if let Ok(value) = path_value(problem, &cand) {
                    if value <= action + 1e-4 * alpha * slope || (value < action && alpha < 1e-3) {
                        accepted = Some((cand, value));
                        break;
                    }
                }
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((cand, value)) => {
                let decrease = action - value;
                path = cand;
                action = value;
                trace.push(action);
                if decrease <= config.tol * action.abs().max(f64::MIN_POSITIVE) {
                    converged = true;
                }
            }
            None => converged = true,
        }
    }
    Ok(PathSolution {
        path,
        action,
        action_trace: trace,
        iterations,
        converged,
    })
}

fn anneal<P: PathProblem + ?Sized>(
    problem: &P,
    mut path: Vec<Vec<f64>>,
    config: &OptimizerConfig,
    seed: u64,
) -> Result<PathSolution> {
    let n = problem.segments();
    let p = problem.point_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut costs: Vec<f64> = (0..n)
        .map(|k| problem.segment_cost(k, &path[k], &path[k + 1]))
        .collect::<Result<_>>()?;
    let action: f64 = costs.iter().sum();
    let mut best = (path.clone(), action);
    let mut trace = vec![action];
    if n < 2 {
        return Ok(PathSolution {
            path,
            action,
            action_trace: trace,
            iterations: 0,
            converged: true,
        });
    }
    let widths: Vec<f64> = (0..p)
        .map(|i| {
            let span = (path[n][i] - path[0][i]).abs();
            let size = path[0][i].abs().max(path[n][i].abs());
            config.initial_step * span.max(1e-2 * size).max(1e-3)
        })
        .collect();
    let mut scale = 1.0;
    let mut temperature = config
        .initial_temperature
        .unwrap_or(1e-2 * action / n as f64)
        .max(f64::MIN_POSITIVE);
    let sweeps = if config.sweeps == 0 { 20 * (n - 1) } else { config.sweeps };
    for _ in 0..config.epochs {
        for _ in 0..sweeps {
            let k = rng.random_range(1..n);
            let proposal: Vec<f64> = path[k]
                .iter()
                .zip(&widths)
                .map(|(x, w)| {
                    let z: f64 = rng.sample(StandardNormal);
                    x + scale * w * z
                })
                .collect();
            let u: f64 = rng.random();
            if !problem.feasible(&proposal) {
                continue;
            }
            let (Ok(left), Ok(right)) = (
                problem.segment_cost(k - 1, &path[k - 1], &proposal),
                problem.segment_cost(k, &proposal, &path[k + 1]),
            ) else {
                continue;
            };
            let delta = left + right - costs[k - 1] - costs[k];
            if delta <= 0.0 || u < (-delta / temperature).exp() {
                path[k] = proposal;
                costs[k - 1] = left;
                costs[k] = right;
            }
        }
        let action: f64 = costs.iter().sum();
        if action < best.1 {
            best = (path.clone(), action);
        }
        trace.push(best.1);
        scale *= config.decay;
        temperature *= config.decay;
    }
    Ok(PathSolution {
        path: best.0,
        action: best.1,
        action_trace: trace,
        iterations: config.epochs,
        converged: true,
    })
}
