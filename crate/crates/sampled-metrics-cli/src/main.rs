mod args;
mod commands;
mod error;
mod ingest;
mod report;
mod reproduce;

use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

use args::{Cli, Command};
use commands::write_output;
use error::CliResult;

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Exact(a) => write_output(&commands::cmd_exact(a)?, a.output.output.as_deref()),
        Command::Expected(a) => write_output(&commands::cmd_expected(a)?, a.output.output.as_deref()),
        Command::Simulate(a) => write_output(&commands::cmd_simulate(a)?, a.output.output.as_deref()),
        Command::Sweep(a) => write_output(&commands::cmd_sweep(a)?, a.output.output.as_deref()),
        Command::Curve(a) => write_output(&commands::cmd_curve(a)?, a.output.output.as_deref()),
        Command::Consistency(a) => {
            write_output(&commands::cmd_consistency(a)?, a.output.output.as_deref())
        }
        Command::ReproducePaper(a) => reproduce::cmd_reproduce(a),
    }
}

fn main() -> ExitCode {
    // Exit-code contract: 0 success, 1 validation error, 2 reproduction
    // mismatch. Usage errors are validation errors.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
