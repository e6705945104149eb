use std::process::ExitCode;

use clap::Parser;
use gcm_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    if report.status == Status::InputError {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.json()) {
            eprintln!("error[E005]: {}: cannot write report: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.status.exit_code() as u8)
}
