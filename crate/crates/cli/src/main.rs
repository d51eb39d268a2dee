mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::RunConfig;
use output::Failure;

fn dispatch(argv: Vec<String>) -> u8 {
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("{}", Failure::usage(first));
            return output::EXIT_USAGE;
        }
    };
    match commands::run(config) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            match outcome.failure {
                Some(f) => {
                    eprintln!("{f}");
                    f.exit
                }
                None => 0,
            }
        }
        Err(f) => {
            eprintln!("{f}");
            f.exit
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(dispatch(std::env::args().collect()))
}
