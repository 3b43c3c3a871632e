//! `gcdb-lab`: runs one experiment and prints its report as JSON or CSV.
//!
//! Exit status is 0 on success, 1 on any error (including bad arguments) and
//! 2 when a closed-form condition disagrees with the computed verdict.

mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
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
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.run.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start {} workers: {e}", cli.run.workers);
            return ExitCode::from(1);
        }
    };
    let report = match pool.install(|| commands::run(&cli.command, &cli.run)) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.run.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    if std::io::stdout().lock().write_all(text.as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    if report.discrepancy {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
