//! `flrw`: figures, sweeps and the acceptance suite from the command line.

mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use flrw_splitting::acceptance::DEFAULT_SEED;
use flrw_splitting::figures::Artifact;
use flrw_splitting::Error;
use thiserror::Error;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Integrate one orbit and write `trajectory.csv`.
    Simulate,
    /// Real Melnikov form, overlap profile and optional hessian report.
    Melnikov,
    /// Connection matrix, det M and the determinant curve.
    Scattering,
    /// Figure tables and plot scripts.
    Figures,
    /// Birkhoff invariants, KAM verdict and resultant.
    Birkhoff,
    /// The exact resultant identity.
    Resultant,
    /// Poincaré section crossings.
    Poincare,
    /// Run the acceptance suite.
    Verify,
}

#[derive(Debug, Parser)]
#[command(
    name = "flrw",
    version,
    about = "Separatrix splitting and KAM analysis of FLRW coupled-field models"
)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration or bare model descriptor.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default `out`; `verify` writes nothing unless given).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Figure number for `figures` (all four when omitted).
    #[arg(long)]
    which: Option<u8>,
    /// Seed of the sampled parameter tuples in `verify`.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("output error: {0}")]
    Output(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Unsupported(_) | Error::Dimension { .. } => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Output(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

/// Write every artifact or none: on the first failure the files already
/// written are removed.
fn write_all(dir: &Path, artifacts: &[Artifact]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Output(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for a in artifacts {
        let path = dir.join(&a.file_name);
        if let Err(e) = std::fs::write(&path, &a.contents) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            let _ = std::fs::remove_file(&path);
            return Err(CliError::Output(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
        written.push(path);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if cli.which.is_some() && cli.command != Command::Figures {
        return Err(CliError::Config(
            "--which applies to the figures command only".into(),
        ));
    }
    let output = match cli.command {
        Command::Simulate => commands::simulate(&cfg)?,
        Command::Melnikov => commands::melnikov(&cfg)?,
        Command::Scattering => commands::scattering(&cfg)?,
        Command::Figures => commands::figures(cli.which)?,
        Command::Birkhoff => commands::birkhoff(&cfg)?,
        Command::Resultant => commands::resultant(&cfg)?,
        Command::Poincare => commands::poincare(&cfg)?,
        Command::Verify => commands::verify(cli.seed),
    };
    let dir = match (&cli.out, cli.command) {
        (Some(d), _) => Some(d.clone()),
        (None, Command::Verify) => None,
        (None, _) => Some(PathBuf::from("out")),
    };
    if let Some(dir) = dir {
        write_all(&dir, &output.artifacts)?;
    }
    print!("{}", output.stdout);
    if !output.success {
        return Err(CliError::Numeric("acceptance criteria failed".into()));
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
