//! Command-line frontend: reproducible runs with key=value reports.

mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = commands::Cli::parse();
    let (code, out, err) = commands::run(cli);
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code)
}
