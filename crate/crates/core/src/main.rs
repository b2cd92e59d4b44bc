use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use sparse_entropy::cli::{self, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::from(cli::EXIT_OK as u8);
        }
        Err(e) => {
            println!("{}", cli::error_json("usage", e.to_string().trim()));
            return ExitCode::from(cli::EXIT_USAGE as u8);
        }
    };
    match cli::run(&config) {
        Ok(out) => {
            println!("{}", out.json);
            eprintln!("{}", out.summary);
            ExitCode::from(cli::EXIT_OK as u8)
        }
        Err(e) => {
            println!("{}", cli::error_json(e.kind(), &e.to_string()));
            eprintln!("error: {e}");
            ExitCode::from(cli::EXIT_COMPUTATION as u8)
        }
    }
}
