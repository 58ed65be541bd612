//! `checkerboard`: command-line experiments for the quadratic checkerboard.

mod commands;
mod config;

use std::process::ExitCode;

use checkerboard::Error;
use clap::Parser;

use crate::config::Cli;

/// Exit status for each failure class.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Domain(_) | Error::UndefinedVelocity | Error::OutOfRange { .. }) => 3,
        Some(Error::ResourceLimit { .. }) => 4,
        Some(Error::InvalidParameter(_) | Error::Parse(_)) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
