//! Config-driven experiment runner.
//!
//! Exit codes: 0 for pass or certified outcomes, 1 for failures and
//! non-separating swamps, 2 for unknown or evidence-only outcomes, 3 for
//! usage errors. Reports go to `<out>/report.json` and `<out>/report.txt`,
//! with `certificate.json` and `ball.dot` when the command produces them.

mod commands;
mod config;
mod dot;

pub use commands::{run_command, Outcome, EXIT_FAIL, EXIT_PASS, EXIT_UNKNOWN};
pub use config::{DfaSource, Experiment, ExperimentConfig, Params};
pub use dot::export_dot;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::group::{EnumConfig, GroupDescriptor, GroupError, DEFAULT_CAP};
use crate::order::{OrderDescriptor, OrderError};
use crate::regular::RegularError;

pub const EXIT_USAGE: i32 = 3;
pub const CAP_VAR: &str = "CONESCOPE_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Regular(#[from] RegularError),
    #[error("writing {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Geometry(GeometryError::PathNotFound(_)) | CliError::Regular(RegularError::NotAccepted(_)) => {
                EXIT_FAIL
            }
            CliError::Geometry(GeometryError::WitnessNotFound { .. }) => EXIT_UNKNOWN,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Axioms,
    Ray,
    Components,
    Swamp,
    Survey,
    CofinalPath,
    DfaVerify,
    DfaPath,
    DfaQg,
    ExportDot,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraversalArg {
    Forward,
    Reversed,
}

/// Exact experiments with positive cones of left-orderable groups.
#[derive(Debug, Parser)]
#[command(name = "conescope", version)]
struct Args {
    /// Experiment config (JSON).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Command to run.
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// Config path, as an alternative to --config.
    #[arg(value_name = "CONFIG", conflicts_with = "config")]
    config_path: Option<PathBuf>,
    /// Command, as an alternative to --command.
    #[arg(value_name = "COMMAND", value_enum, conflicts_with = "command")]
    command_name: Option<Command>,
    /// Output directory (default: the config's "out", else ./conescope-out).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Ball radius R (or N for the ray).
    #[arg(long)]
    radius: Option<usize>,
    /// Path width r.
    #[arg(long)]
    width: Option<usize>,
    /// Longest automaton word to enumerate.
    #[arg(long)]
    lmax: Option<usize>,
    /// Add wall-clock timings to report.json.
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, hide = true)]
    traversal: Option<TraversalArg>,
}

#[derive(Serialize)]
struct Inputs<'a> {
    group: &'a GroupDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<&'a OrderDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dfa: Option<serde_json::Value>,
    params: &'a Params,
    cap: u64,
}

#[derive(Serialize)]
struct Report<'a> {
    command: String,
    tool_version: &'static str,
    inputs: Inputs<'a>,
    verdict: &'a str,
    exit_code: i32,
    result: &'a serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<f64>,
}

/// Parses arguments, runs the command and writes its reports. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&args) {
        Ok((exit, summary)) => {
            println!("{summary}");
            exit
        }
        Err(e) => {
            eprintln!("conescope: {e}");
            e.exit_code()
        }
    }
}

fn cap_from_env() -> Result<u64, CliError> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CAP),
        Err(e) => Err(CliError::Usage(format!("{CAP_VAR}: {e}"))),
    }
}

fn execute(args: &Args) -> Result<(i32, String), CliError> {
    let config_path = args
        .config
        .as_ref()
        .or(args.config_path.as_ref())
        .ok_or_else(|| CliError::Usage("no config given (use --config PATH)".into()))?;
    let command = args
        .command
        .or(args.command_name)
        .ok_or_else(|| CliError::Usage("no command given (use --command NAME)".into()))?;

    let mut config = EnumConfig::with_cap(cap_from_env()?);
    if args.traversal == Some(TraversalArg::Reversed) {
        config = config.reversed();
    }

    let experiment = Experiment::load(config_path)?;
    let mut params = experiment.config.params.clone();
    params.radius = args.radius.or(params.radius);
    params.r = args.width.or(params.r);
    params.lmax = args.lmax.or(params.lmax);
    let out_dir = args
        .out
        .clone()
        .or_else(|| experiment.config.out.clone())
        .unwrap_or_else(|| PathBuf::from("conescope-out"));

    let start = Instant::now();
    let outcome = run_command(command, &experiment, &params, &config)?;
    let elapsed = start.elapsed();

    let report = Report {
        command: command.name(),
        tool_version: env!("CARGO_PKG_VERSION"),
        inputs: Inputs {
            group: &experiment.config.group,
            order: experiment.config.order.as_ref(),
            dfa: experiment.dfa.as_ref().map(|d| serde_json::from_str(&d.to_json()).expect("automaton json")),
            params: &params,
            cap: config.cap,
        },
        verdict: &outcome.verdict,
        exit_code: outcome.exit,
        result: &outcome.result,
        timings_ms: args.timings.then_some(elapsed.as_secs_f64() * 1000.0),
    };
    let mut text = format!("{}: {}\n", report.command, outcome.verdict);
    for line in &outcome.summary {
        text.push_str(line);
        text.push('\n');
    }

    write_file(&out_dir, "report.json", &(to_json(&report) + "\n"))?;
    write_file(&out_dir, "report.txt", &text)?;
    if let Some(cert) = &outcome.certificate {
        write_file(&out_dir, "certificate.json", &(to_json(cert) + "\n"))?;
    }
    if let Some(dot) = &outcome.dot {
        write_file(&out_dir, "ball.dot", dot)?;
    }
    Ok((outcome.exit, text.trim_end().to_string()))
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, contents))
        .map_err(|source| CliError::Io { path, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names() {
        assert_eq!(Command::CofinalPath.name(), "cofinal-path");
        assert_eq!(Command::DfaQg.name(), "dfa-qg");
        assert_eq!(Command::ExportDot.name(), "export-dot");
    }

    #[test]
    fn usage_errors_exit_with_3() {
        assert_eq!(run(["conescope", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["conescope", "--command", "ray"]), EXIT_USAGE);
        assert_eq!(run(["conescope", "/nonexistent/cfg.json", "ray"]), EXIT_USAGE);
        assert_eq!(run(["conescope", "cfg.json", "fly"]), EXIT_USAGE);
    }
}
