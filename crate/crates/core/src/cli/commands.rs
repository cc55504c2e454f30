// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};
use serde_json::Value;

use super::output::{Check, Outputs, Table};
use super::{Command, RunConfig};
use crate::flows::{
    analytic_fermionic_path, exact_fermionic_path, fermionic_distance_squared, geodesic_bvp,
    linear_path, natural_gradient_flow, sbp_equivalence_check, sbp_solve, GeodesicSolution,
    RelativeEntropyObjective,
};
use crate::gaussian::{
    admissibility_margins, gaussian_geodesic, grid_points, validate_gaussian, wigner_grid,
    GaussianModel, GaussianState,
};
use crate::lindblad::LindbladGenerator;
use crate::metric::{path_action, InformationMetric, ParametricModel, RegisteredModel};
use crate::operator::GeneratorJson;
use crate::operator::{DensityOperator, HermitianOperator, TraceConvention};
use crate::{Error, Result};

/// Outcome of a command that ran to completion.
pub enum Status {
    Done,
    /// The input was examined and found invalid.
    Rejected(String),
}

pub fn dispatch(command: &Command, cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    match command {
        Command::Infomatrix(_) => infomatrix(cfg, out),
        Command::Geodesic(_) => geodesic(cfg, out),
        Command::Flow(_) => flow(cfg, out),
        Command::Bridge(_) => bridge(cfg, out),
        Command::WignerGrid(_) => wigner(cfg, out),
        Command::Validate(_) => validate(cfg, out),
    }
}

fn model_key(cfg: &RunConfig, default: &str) -> String {
    cfg.model.clone().unwrap_or_else(|| default.to_string())
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::Domain(format!("grid must be `start:stop:step`, got `{text}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.trim().parse::<f64>().map_err(|_| bad())?;
    }
    grid_points(v[0], v[1], v[2])
}

fn numbers(value: &Value) -> Result<Vec<f64>> {
    let bad = || Error::Domain(format!("expected a number or an array of numbers, got {value}"));
    match value {
        Value::Number(n) => Ok(vec![n.as_f64().ok_or_else(bad)?]),
        Value::Array(items) => items.iter().map(|v| v.as_f64().ok_or_else(bad)).collect(),
        _ => Err(bad()),
    }
}

fn point(value: Option<&Value>, default: f64) -> Result<Vec<f64>> {
    value.map_or(Ok(vec![default]), numbers)
}

/// A Gaussian state from `{"mu": [...], "sigma": [[...]]}` or a flat
/// parameter array `(mu, upper triangle of Sigma)`.
fn gaussian_state(value: &Value) -> Result<GaussianState> {
    match value {
        Value::Object(map) => {
            for key in map.keys() {
                if key != "mu" && key != "sigma" {
                    return Err(Error::Domain(format!("unknown Gaussian field `{key}`")));
                }
            }
            let sigma_rows = map
                .get("sigma")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Domain("Gaussian state needs a `sigma` matrix".into()))?;
            let rows = sigma_rows.iter().map(numbers).collect::<Result<Vec<_>>>()?;
            let d = rows.len();
            if d == 0 || d % 2 != 0 || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Size(format!(
                    "sigma must be a square matrix of even size, got {d} rows"
                )));
            }
            let sigma = DMatrix::from_fn(d, d, |i, j| rows[i][j]);
            let mu = match map.get("mu") {
                Some(v) => numbers(v)?,
                None => vec![0.0; d],
            };
            if mu.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: mu.len(),
                });
            }
            validate_gaussian(&sigma, &DVector::from_vec(mu))
        }
        other => {
            let theta = numbers(other)?;
            let model = GaussianModel::new(1);
            if theta.len() != model.num_params() {
                return Err(Error::DimensionMismatch {
                    expected: model.num_params(),
                    found: theta.len(),
                });
            }
            model.state(&theta)
        }
    }
}

fn paper_gaussian(start: bool) -> GaussianState {
    let (sigma, mu) = if start {
        ([26.0, 1.0, 1.0, 1.0], [-1.0, -1.0])
    } else {
        ([1.0, 1.0, 1.0, 2.0], [2.0, 7.0])
    };
    GaussianState::new(
        DMatrix::from_row_slice(2, 2, &sigma),
        DVector::from_row_slice(&mu),
    )
    .expect("reference endpoints are admissible")
}

fn gaussian_endpoint(value: Option<&Value>, start: bool) -> Result<GaussianState> {
    value.map_or_else(|| Ok(paper_gaussian(start)), gaussian_state)
}

fn require_inside(metric: &dyn InformationMetric, theta: &[f64]) -> Result<()> {
    if theta.len() != metric.dim() {
        return Err(Error::DimensionMismatch {
            expected: metric.dim(),
            found: theta.len(),
        });
    }
    if !metric.contains(theta) {
        return Err(Error::Boundary {
            theta: theta.to_vec(),
        });
    }
    Ok(())
}

fn sup_distance(a: &[Vec<f64>], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x[0] - y).abs()).fold(0.0, f64::max)
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}_{i}")).collect()
    }
}

fn infomatrix(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let model = RegisteredModel::lookup(&model_key(cfg, "fermionic-n1"))?;
    let settings = &cfg.settings;
    if let RegisteredModel::Gaussian(g) = &model {
        let state = gaussian_endpoint(cfg.theta0.as_ref(), true)?;
        let theta = g.to_theta(state.mu(), state.sigma());
        let m = g.info_matrix(&theta, settings)?;
        let mut table = Table::new(["i", "j", "g"]);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                table.push(vec![i as f64, j as f64, m[(i, j)]]);
            }
        }
        out.write_table("infomatrix.csv", &table)?;
        out.record("theta", &theta);
        return Ok(Status::Done);
    }
    let default_grid = match model {
        RegisteredModel::Depolarizing(_) => "0.1:2:0.1",
        _ => "-0.9:0.9:0.1",
    };
    let grid = parse_grid(cfg.theta.as_deref().unwrap_or(default_grid))?;
    let metric = model.metric();
    let mut table = Table::new(["theta", "g", "reference", "abs_error"]);
    let mut worst = 0.0f64;
    let mut has_reference = false;
    for &t in &grid {
        require_inside(metric, &[t])?;
        let g = metric.info_matrix(&[t], settings)?[(0, 0)];
        let (reference, err) = match model.reference(&[t]) {
            Some(r) => {
                has_reference = true;
                let e = (g - r[(0, 0)]).abs();
                worst = worst.max(e);
                (r[(0, 0)], e)
            }
            None => (f64::NAN, f64::NAN),
        };
        table.push(vec![t, g, reference, err]);
    }
    out.write_table("infomatrix.csv", &table)?;
    out.record("points", grid.len());
    if has_reference {
        out.record("max_abs_error", worst);
        out.check(Check::at_most("reference", worst, 1e-8));
    }
    Ok(Status::Done)
}

fn geodesic(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let model = RegisteredModel::lookup(&model_key(cfg, "fermionic-n1"))?;
    match &model {
        RegisteredModel::Gaussian(_) => gaussian_geodesic_cmd(cfg, out),
        _ => parametric_geodesic(&model, cfg, out),
    }
}

fn write_action_trace(out: &mut Outputs, trace: &[f64]) -> Result<()> {
    let mut table = Table::new(["iteration", "action"]);
    for (k, a) in trace.iter().enumerate() {
        table.push(vec![k as f64, *a]);
    }
    out.write_table("action_trace.csv", &table)
}

fn record_solution(out: &mut Outputs, sol: &GeodesicSolution) {
    out.record("action", sol.action);
    out.record("iterations", sol.iterations);
    out.record("converged", sol.converged);
    let monotone = sol.action_trace.windows(2).all(|w| w[1] <= w[0]);
    out.record("action_trace_monotone", monotone);
}

fn parametric_geodesic(model: &RegisteredModel, cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let settings = &cfg.settings;
    let metric = model.metric();
    let (d0, d1) = match model {
        RegisteredModel::Depolarizing(_) => (0.5, 2.0),
        _ => (-0.9, 0.9),
    };
    let theta0 = point(cfg.theta0.as_ref(), d0)?;
    let theta1 = point(cfg.theta1.as_ref(), d1)?;
    require_inside(metric, &theta0)?;
    require_inside(metric, &theta1)?;
    let mut header = vec!["step".to_string(), "t".to_string()];
    header.extend(indexed("theta", theta0.len()));
    header.push("action".into());
    let mut table = Table::new(header);
    if theta0 == theta1 {
        let mut row = vec![0.0, 0.0];
        row.extend(&theta0);
        row.push(0.0);
        table.push(row);
        out.write_table("geodesic.csv", &table)?;
        out.record("action", 0.0);
        return Ok(Status::Done);
    }
    let n = cfg.n.unwrap_or(100);
    let sol = geodesic_bvp(metric, &theta0, &theta1, n, &cfg.optimizer, settings)?;
    let traj = &sol.trajectory;
    for k in 0..traj.len() {
        let mut row = vec![k as f64, traj.times[k]];
        row.extend(&traj.thetas[k]);
        row.push(traj.diagnostics[k]);
        table.push(row);
    }
    out.write_table("geodesic.csv", &table)?;
    write_action_trace(out, &sol.action_trace)?;
    record_solution(out, &sol);
    match (model, model.name()) {
        (RegisteredModel::Fermionic(_), "fermionic-n1") => {
            let (a, b) = (theta0[0], theta1[0]);
            let tol = if a.abs().max(b.abs()) > 0.99 { 1e-2 } else { 1e-3 };
            let closed = analytic_fermionic_path(a, b, n)?;
            let exact = exact_fermionic_path(a, b, n)?;
            let dev_closed = sup_distance(&traj.thetas, &closed);
            let dev_exact = sup_distance(&traj.thetas, &exact);
            out.record("zeta_formula_deviation", dev_closed);
            out.record("arc_length_deviation", dev_exact);
            out.record("distance_squared", fermionic_distance_squared(a, b)?);
            out.check(Check::at_most("zeta_formula", dev_closed, tol));
            out.check(Check::at_most("arc_length_geodesic", dev_exact, tol));
        }
        (RegisteredModel::Fermionic(_), _) => {
            let line = linear_path(&theta0, &theta1, n);
            let dev = traj
                .thetas
                .iter()
                .zip(&line)
                .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
                .fold(0.0, f64::max);
            out.record("straight_line_deviation", dev);
            out.check(Check::at_most("straight_line", dev, 1e-6));
        }
        _ => {}
    }
    Ok(Status::Done)
}

fn gaussian_geodesic_cmd(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let settings = &cfg.settings;
    let start = gaussian_endpoint(cfg.theta0.as_ref(), true)?;
    let end = gaussian_endpoint(cfg.theta1.as_ref(), false)?;
    if start.modes() != end.modes() {
        return Err(Error::DimensionMismatch {
            expected: start.modes(),
            found: end.modes(),
        });
    }
    let model = GaussianModel::new(start.modes());
    let d = 2 * start.modes();
    let mut header = vec!["step".to_string()];
    header.extend(indexed("mu", d));
    for i in 1..=d {
        for j in i..=d {
            header.push(format!("sigma_{i}{j}"));
        }
    }
    header.push("action".into());
    let mut table = Table::new(header);
    let theta0 = model.to_theta(start.mu(), start.sigma());
    let theta1 = model.to_theta(end.mu(), end.sigma());
    if theta0 == theta1 {
        let mut row = vec![0.0];
        row.extend(&theta0);
        row.push(0.0);
        table.push(row);
        out.write_table("geodesic.csv", &table)?;
        out.record("action", 0.0);
        return Ok(Status::Done);
    }
    let n = cfg.n.unwrap_or(50);
    let linear = path_action(&model, &linear_path(&theta0, &theta1, n), settings)?;
    let sol = gaussian_geodesic(&start, &end, n, &cfg.optimizer, settings)?;
    let traj = &sol.trajectory;
    let mut worst_margin = f64::INFINITY;
    for k in 0..traj.len() {
        let (_, sigma) = model.split(&traj.thetas[k])?;
        let (min_sigma, min_h) = admissibility_margins(&sigma);
        worst_margin = worst_margin.min(min_h);
        if min_sigma <= 0.0 {
            worst_margin = worst_margin.min(min_sigma);
        }
        let mut row = vec![k as f64];
        row.extend(&traj.thetas[k]);
        row.push(traj.diagnostics[k]);
        table.push(row);
    }
    out.write_table("geodesic.csv", &table)?;
    write_action_trace(out, &sol.action_trace)?;
    record_solution(out, &sol);
    out.record("linear_action", linear);
    out.record("min_admissibility_margin", worst_margin);
    out.check(Check::at_most("admissibility", -worst_margin, 1e-10));
    out.check(Check::at_most("improves_on_linear", sol.action - linear, 0.0));
    Ok(Status::Done)
}

fn parametric(model: &RegisteredModel) -> Result<&dyn ParametricModel> {
    match model {
        RegisteredModel::Fermionic(m) => Ok(m),
        RegisteredModel::Depolarizing(m) => Ok(m),
        RegisteredModel::Gaussian(_) => Err(Error::Precondition(
            "this command needs a density-operator model".into(),
        )),
    }
}

fn flow(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let settings = &cfg.settings;
    let registered = RegisteredModel::lookup(&model_key(cfg, "fermionic-n1"))?;
    let model = parametric(&registered)?;
    let d0 = if matches!(registered, RegisteredModel::Depolarizing(_)) { 1.0 } else { 0.8 };
    let theta0 = point(cfg.theta0.as_ref(), d0)?;
    require_inside(registered.metric(), &theta0)?;
    let tau = cfg.tau.unwrap_or(1e-3);
    let steps = cfg.steps.unwrap_or(5000);
    let objective = RelativeEntropyObjective::to_invariant(model, settings);
    let traj = match natural_gradient_flow(model, &theta0, &objective, tau, steps, settings) {
        Ok(t) => t,
        Err(Error::DomainExit { step, theta }) => {
            out.record("last_valid_step", step - 1);
            out.record("last_valid_theta", &theta);
            return Err(Error::DomainExit { step, theta });
        }
        Err(e) => return Err(e),
    };
    let mut header = vec!["step".to_string(), "t".to_string()];
    header.extend(indexed("theta", theta0.len()));
    header.push("R".into());
    let mut table = Table::new(header);
    for k in 0..traj.len() {
        let mut row = vec![k as f64, traj.times[k]];
        row.extend(&traj.thetas[k]);
        row.push(traj.diagnostics[k]);
        table.push(row);
    }
    out.write_table("flow.csv", &table)?;
    let end = traj.last().map(<[f64]>::to_vec).unwrap_or_default();
    let t_end = traj.times.last().copied().unwrap_or(0.0);
    out.record("final_time", t_end);
    out.record("endpoint", &end);
    if registered.name() == "fermionic-n1" {
        let reference = theta0[0] * (-t_end).exp();
        let err = (end[0] - reference).abs();
        out.record("reference_endpoint", reference);
        out.record("endpoint_error", err);
        out.check(Check::at_most("exponential_decay", err, 1e-3));
    }
    Ok(Status::Done)
}

fn bridge(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let settings = &cfg.settings;
    let registered = RegisteredModel::lookup(&model_key(cfg, "fermionic-n1"))?;
    let model = parametric(&registered)?;
    let (d0, d1) = match registered {
        RegisteredModel::Depolarizing(_) => (0.5, 2.0),
        _ => (-0.5, 0.5),
    };
    let theta0 = point(cfg.theta0.as_ref(), d0)?;
    let theta1 = point(cfg.theta1.as_ref(), d1)?;
    require_inside(registered.metric(), &theta0)?;
    require_inside(registered.metric(), &theta1)?;
    let beta = cfg.beta.unwrap_or(0.0);
    let n = cfg.n.unwrap_or(50);
    let structure = model.structure();
    let rho_in = model.state(&theta0)?;
    let rho_fi = model.state(&theta1)?;
    let path = sbp_solve(structure, &rho_in, &rho_fi, beta, n, &cfg.optimizer, settings)?;
    let dim = path.coordinates.first().map_or(0, Vec::len);
    let mut header = vec!["step".to_string(), "t".to_string()];
    header.extend(indexed("x", dim));
    header.push("functional".into());
    let mut table = Table::new(header);
    let mut acc = 0.0;
    for (k, x) in path.coordinates.iter().enumerate() {
        if k > 0 {
            acc += path.segment_costs[k - 1];
        }
        let mut row = vec![k as f64, k as f64 / n as f64];
        row.extend(x);
        row.push(acc);
        table.push(row);
    }
    out.write_table("bridge.csv", &table)?;
    write_action_trace(out, &path.action_trace)?;
    out.record("functional_value", path.functional_value);
    out.record("transport_cost", path.transport_cost);
    out.record("fisher_cost", path.fisher_cost);
    out.record("entropy_term", path.entropy_term);
    out.record("converged", path.converged);
    let report = sbp_equivalence_check(&path, &structure.invariant_state(), beta, structure, settings)?;
    out.record("equivalence_lhs", report.lhs);
    out.record("equivalence_rhs", report.rhs);
    out.record("equivalence_residual", report.residual);
    if beta == 0.0 {
        let geo = geodesic_bvp(model, &theta0, &theta1, n, &cfg.optimizer, settings)?;
        let diff = (path.functional_value - geo.action).abs();
        out.record("geodesic_action", geo.action);
        out.record("geodesic_action_difference", diff);
        out.check(Check::at_most("geodesic_reduction", diff, 1e-3));
    }
    Ok(Status::Done)
}

fn wigner(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let key = model_key(cfg, "gaussian");
    if !matches!(RegisteredModel::lookup(&key)?, RegisteredModel::Gaussian(_)) {
        return Err(Error::Precondition("wigner-grid needs the gaussian model".into()));
    }
    let state = gaussian_endpoint(cfg.theta0.as_ref(), true)?;
    let axis = parse_grid(cfg.grid.as_deref().unwrap_or("-5:5:0.1"))?;
    let grid = wigner_grid(&state, &axis, &axis)?;
    let mut table = Table::new(["x", "xi", "W"]);
    for row in &grid.rows {
        table.push(row.to_vec());
    }
    out.write_table("wigner.csv", &table)?;
    out.record("points", grid.rows.len());
    Ok(Status::Done)
}

fn validate(cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    if let Some(path) = &cfg.generator {
        return validate_generator(path, cfg, out);
    }
    let registered = RegisteredModel::lookup(&model_key(cfg, "fermionic-n1"))?;
    if let RegisteredModel::Gaussian(_) = registered {
        let value = cfg
            .theta0
            .as_ref()
            .ok_or_else(|| Error::Precondition("validate needs --theta0".into()))?;
        let state = gaussian_state(value)?;
        let (min_sigma, min_h) = admissibility_margins(state.sigma());
        out.record("min_eigenvalue_sigma", min_sigma);
        out.record("min_eigenvalue_sigma_plus_i_nu", min_h);
        out.record("valid", true);
        return Ok(Status::Done);
    }
    let theta = point(cfg.theta0.as_ref(), 0.0)?;
    let metric = registered.metric();
    let inside = theta.len() == metric.dim() && metric.contains(&theta);
    out.record("theta", &theta);
    out.record("valid", inside);
    if inside {
        Ok(Status::Done)
    } else {
        Ok(Status::Rejected(format!(
            "{theta:?} lies outside the domain of {}",
            registered.name()
        )))
    }
}

fn validate_generator(path: &std::path::Path, cfg: &RunConfig, out: &mut Outputs) -> Result<Status> {
    let text = std::fs::read_to_string(path)?;
    let desc: GeneratorJson = serde_json::from_str(&text)?;
    let sigma = DensityOperator::with_settings(
        HermitianOperator::with_tolerance(desc.sigma.to_matrix()?, cfg.settings.hermitian_tol)?,
        TraceConvention::Standard,
        &cfg.settings,
    )?;
    let terms = desc
        .terms
        .iter()
        .map(|t| {
            Ok(crate::lindblad::JumpTerm {
                v: t.v.to_matrix()?,
                omega: t.omega,
                adjoint: t.adjoint,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = LindbladGenerator::new_unchecked(sigma, terms).validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            serde_json::json!({
                "term": v.index,
                "condition": v.condition.describe(),
                "residual": v.residual,
            })
        })
        .collect();
    out.record("valid", report.accepted());
    out.record("max_residual", report.max_residual());
    out.record("violations", &violations);
    if report.accepted() {
        Ok(Status::Done)
    } else {
        Ok(Status::Rejected(format!(
            "generator violates detailed balance in {} place(s)",
            violations.len()
        )))
    }
}
