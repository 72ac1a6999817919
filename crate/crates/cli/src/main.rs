//! `rzl`: command-line front end for rzl-core.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad flags or argument
//! values, 3 numeric, resource or data failure.

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult, EXIT_USAGE};

fn run(cli: &Cli) -> CliResult {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set up {n} threads: {e}")))?;
    }
    let cfg = RunConfig::from_args(&cli.global)?;
    match &cli.command {
        Command::Riesz(c) => commands::riesz::run(c, &cfg),
        Command::Ck(c) => commands::ck::run(c, &cfg),
        Command::Verify(c) => commands::verify::run(c, &cfg),
        Command::Sums(c) => commands::sums::run(c, &cfg),
        Command::Zeros(c) => commands::zeros::run(c, &cfg),
        Command::Fit(c) => commands::fit::run(c, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerifyFailed) => ExitCode::from(error::EXIT_VERIFY as u8),
        Err(e) => {
            eprintln!("rzl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
