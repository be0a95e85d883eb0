use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = whichway_cli::Cli::parse();
    match whichway_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
