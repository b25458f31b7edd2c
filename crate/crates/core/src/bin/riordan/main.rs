mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use riordan::Error;

use args::{Cli, Command};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MODE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ExactModeIrrational | Error::RequiresZeroDiagonal => EXIT_MODE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = &cli.output;
    let result = match &cli.command {
        Command::Triangle(a) => commands::triangle(out, a),
        Command::Exp(a) => commands::exp(out, a),
        Command::Apply(a) => commands::apply(out, a),
        Command::Flow(a) => commands::flow(out, a),
        Command::Check(a) => commands::check(out, a),
    };
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_USAGE);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
