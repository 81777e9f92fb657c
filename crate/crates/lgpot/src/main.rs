// SPDX-License-Identifier: MIT
use std::process::ExitCode;

use clap::Parser;
use lgpot::cli::{run, Cli, Outcome};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lgpot: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
