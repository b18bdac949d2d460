use std::process::ExitCode;

use clap::Parser;

use repnet::cli::Cli;
use repnet::commands::{exit_code, run};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    exit_code(run(cli))
}
