// Copyright 2026 The qwass Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Every subcommand writes its data as CSV into the output directory
//! together with `manifest.json`. Exit codes: 0 success, 2 usage error,
//! 3 infeasible input or failed validation, 4 a flow left its domain.

mod commands;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::flows::{OptimizerConfig, OptimizerMode};
use crate::{Error, NumericSettings};
use output::{write_atomic, Outputs, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qwass", version, about = "Quantum Wasserstein geometry toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Information matrix of a model over a parameter grid.
    Infomatrix(RunArgs),
    /// Geodesic between two parameter points.
    Geodesic(RunArgs),
    /// Natural-gradient flow of the relative entropy.
    Flow(RunArgs),
    /// Schrödinger bridge between two states of a model.
    Bridge(RunArgs),
    /// Wigner density of a single-mode Gaussian state on a grid.
    #[command(name = "wigner-grid")]
    WignerGrid(RunArgs),
    /// Checks a parameter point, Gaussian state or generator file.
    Validate(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Infomatrix(_) => "infomatrix",
            Self::Geodesic(_) => "geodesic",
            Self::Flow(_) => "flow",
            Self::Bridge(_) => "bridge",
            Self::WignerGrid(_) => "wigner-grid",
            Self::Validate(_) => "validate",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Self::Infomatrix(a)
            | Self::Geodesic(a)
            | Self::Flow(a)
            | Self::Bridge(a)
            | Self::WignerGrid(a)
            | Self::Validate(a) => a,
        }
    }
}

/// Flags shared by all subcommands; each overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Model key: fermionic-n1, fermionic-n1-ac, depolarizing-n2, gaussian.
    #[arg(long)]
    pub model: Option<String>,
    /// Start point as JSON: a number, an array, or {"mu": [...], "sigma": [[...]]}.
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<String>,
    /// End point, same format as --theta0.
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: Option<String>,
    /// Parameter grid `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Phase-space grid `start:stop:step`, used for both axes.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Number of flow steps.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Flow step size.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Entropic regularization strength.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Number of path segments.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Path optimizer.
    #[arg(long, value_parser = ["grad", "mc"])]
    pub mode: Option<String>,
    /// Seed for the Monte-Carlo optimizer.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Lindblad generator JSON file (validate).
    #[arg(long)]
    pub generator: Option<PathBuf>,
}

/// Resolved configuration of one run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub model: Option<String>,
    pub theta0: Option<serde_json::Value>,
    pub theta1: Option<serde_json::Value>,
    pub theta: Option<String>,
    pub grid: Option<String>,
    pub steps: Option<usize>,
    pub tau: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub generator: Option<PathBuf>,
    pub settings: NumericSettings,
    pub optimizer: OptimizerConfig,
}

fn parse_json_flag(name: &str, text: &str) -> Result<serde_json::Value, String> {
    serde_json::from_str(text).map_err(|e| format!("--{name} is not valid JSON: {e}"))
}

impl RunConfig {
    /// Loads the config file (if any) and applies flag overrides.
    pub fn resolve(command: &str, args: &RunArgs) -> Result<Self, String> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                serde_json::from_str::<RunConfig>(&text)
                    .map_err(|e| format!("invalid config {}: {e}", path.display()))?
            }
            None => RunConfig::default(),
        };
        if let Some(c) = &cfg.command {
            if c != command {
                return Err(format!("config is for `{c}`, not `{command}`"));
            }
        }
        cfg.command = Some(command.to_string());
        if let Some(v) = &args.model {
            cfg.model = Some(v.clone());
        }
        if let Some(v) = &args.theta0 {
            cfg.theta0 = Some(parse_json_flag("theta0", v)?);
        }
        if let Some(v) = &args.theta1 {
            cfg.theta1 = Some(parse_json_flag("theta1", v)?);
        }
        if let Some(v) = &args.theta {
            cfg.theta = Some(v.clone());
        }
        if let Some(v) = &args.grid {
            cfg.grid = Some(v.clone());
        }
        if let Some(v) = args.steps {
            cfg.steps = Some(v);
        }
        if let Some(v) = args.tau {
            cfg.tau = Some(v);
        }
        if let Some(v) = args.beta {
            cfg.beta = Some(v);
        }
        if let Some(v) = args.n {
            cfg.n = Some(v);
        }
        if let Some(v) = &args.mode {
            cfg.optimizer.mode = v.parse::<OptimizerMode>().map_err(|e| e.to_string())?;
        }
        if let Some(v) = args.seed {
            cfg.seed = Some(v);
        }
        if cfg.seed.is_some() {
            cfg.optimizer.seed = cfg.seed;
        }
        if let Some(v) = &args.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = &args.generator {
            cfg.generator = Some(v.clone());
        }
        if cfg.optimizer.mode == OptimizerMode::MonteCarlo && cfg.optimizer.seed.is_none() {
            return Err("--mode mc requires --seed".into());
        }
        Ok(cfg)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("qwass-out"))
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Boundary { .. }
        | Error::Admissibility { .. }
        | Error::Infeasible { .. }
        | Error::NotFaithful { .. }
        | Error::NotPositive { .. }
        | Error::NotHermitian { .. }
        | Error::InvalidTrace { .. }
        | Error::InvalidGenerator(_) => EXIT_INFEASIBLE,
        Error::DomainExit { .. } => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("QWASS_NUM_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    configure_threads();
    let name = cli.command.name();
    let cfg = match RunConfig::resolve(name, cli.command.args()) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let started = Instant::now();
    let mut out = Outputs::new(cfg.out_dir());
    let result = commands::dispatch(&cli.command, &cfg, &mut out);
    let (code, message) = match result {
        Ok(commands::Status::Done) => (EXIT_OK, None),
        Ok(commands::Status::Rejected(msg)) => (EXIT_INFEASIBLE, Some(msg)),
        Err(err) => (exit_code(&err), Some(err.to_string())),
    };
    if let Some(msg) = &message {
        eprintln!("error: {msg}");
    }
    if code == EXIT_USAGE {
        return code;
    }
    for c in out.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "check {}: {:.3e} exceeds {:.1e}",
            c.name, c.value, c.tolerance
        );
    }
    let manifest = RunManifest {
        command: name.to_string(),
        exit_code: code,
        config: serde_json::to_value(&cfg).unwrap_or(serde_json::Value::Null),
        artifacts: out.artifacts.clone(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        results: out.results.clone(),
        checks: out.checks.clone(),
        message,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    if let Err(e) = write_atomic(&out.dir().join("manifest.json"), text.as_bytes()) {
        eprintln!("error: cannot write manifest: {e}");
        return EXIT_USAGE;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"model": "fermionic-n1-ac", "N": 20, "tau": 0.5}"#).unwrap();
        let args = RunArgs {
            config: Some(path),
            n: Some(40),
            ..RunArgs::default()
        };
        let cfg = RunConfig::resolve("geodesic", &args).unwrap();
        assert_eq!(cfg.model.as_deref(), Some("fermionic-n1-ac"));
        assert_eq!(cfg.n, Some(40));
        assert_eq!(cfg.tau, Some(0.5));
    }

    #[test]
    fn unknown_config_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"modle": "x"}"#).unwrap();
        let args = RunArgs {
            config: Some(path),
            ..RunArgs::default()
        };
        assert!(RunConfig::resolve("geodesic", &args).is_err());
    }

    #[test]
    fn monte_carlo_requires_seed() {
        let args = RunArgs {
            mode: Some("mc".into()),
            ..RunArgs::default()
        };
        assert!(RunConfig::resolve("geodesic", &args).is_err());
        let args = RunArgs {
            seed: Some(3),
            ..args
        };
        assert!(RunConfig::resolve("geodesic", &args).is_ok());
    }
}
