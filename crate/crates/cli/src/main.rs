//! `polyhardy`: Hardy decomposition of Whitney jets on closed curves.
//!
//! Exit codes: 0 success, 1 malformed input or nothing to report,
//! 2 a measured defect above the requested tolerance.

mod commands;
mod config;
mod probes;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use config::{CurveSpec, RunConfig};

#[derive(Parser)]
#[command(name = "polyhardy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Split a jet into its interior and exterior parts.
    Decompose,
    /// Apply the singular operator to a jet.
    ApplySk,
    /// Run the property suites and report each measured defect.
    Verify,
    /// Evaluate the polyanalytic function with the given boundary jet at probe points.
    Evaluate,
    /// Solve the jump problem and report per-node jump residuals.
    JumpSolve,
}

#[derive(Args)]
struct Flags {
    /// JSON config file; flags take precedence over its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// `circle`, `circle:cx,cy,r`, `ellipse:a,b`, inline JSON, or a JSON file.
    #[arg(long, global = true)]
    curve: Option<String>,
    /// Jet order.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Number of curve nodes (even).
    #[arg(long = "N", global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Jet JSON file or `builtin:NAME`.
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Probe CSV file (re,im per line) or an inline list like `0.1,0.5i`.
    #[arg(long, global = true)]
    probes: Option<String>,
}

impl Flags {
    fn into_config(self) -> anyhow::Result<RunConfig> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(file.overlay(RunConfig {
            curve: self.curve.map(CurveSpec::Text),
            k: self.k,
            n: self.n,
            tol: self.tol,
            input: self.input,
            out: self.out,
            seed: self.seed,
            probes: self.probes,
        }))
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let config = cli.flags.into_config()?;
    match cli.command {
        Command::Decompose => commands::decompose(&config),
        Command::ApplySk => commands::apply(&config),
        Command::Verify => commands::verify(&config),
        Command::Evaluate => commands::evaluate(&config),
        Command::JumpSolve => commands::jump_solve(&config),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Outcome::Failed.code())
        }
    }
}
