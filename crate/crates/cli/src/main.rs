use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cylflex_cli::{error_name, exit_code, render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(render(&cli, &report).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error[{}]: {err:#}", error_name(&err));
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
