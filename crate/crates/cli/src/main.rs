mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = RunConfig::from_cli(cli);
    match commands::run(&cfg) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::INPUT_ERROR)
        }
    }
}
