use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod input;
mod report;

use args::Cli;
use commands::CommandError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", out.stdout).is_err() {
                return ExitCode::from(1);
            }
            if let Some(msg) = out.failure {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(CommandError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
