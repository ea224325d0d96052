//! `vbslab`: exact entanglement spectra of valence-bond-solid states from
//! the command line.
//!
//! Exit codes: 0 success, 1 invalid configuration, 2 model condition
//! violated (e.g. unsolvable bond multiplicities), 3 resource cap exceeded,
//! 4 a `verify` check failed.

mod compute;
mod config;
mod report;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use vbslab::{Limits, VbsError};

use crate::config::{Cli, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Model(VbsError),
    Io(String),
    ChecksFailed(usize),
}

impl From<VbsError> for CliError {
    fn from(e: VbsError) -> Self {
        CliError::Model(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
            CliError::ChecksFailed(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Model(VbsError::Domain(_) | VbsError::Parse(_)) => 1,
            CliError::Model(VbsError::ModelCondition(_)) => 2,
            CliError::Model(VbsError::ResourceCap { .. }) => 3,
            CliError::ChecksFailed(_) => 4,
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let limits = Limits::from_env().map_err(|e| CliError::Config(e.to_string()))?;
    let report = compute::run(&cfg, &limits)?;
    let text = report.render(cfg.format)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vbslab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
