use std::fs;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use uprime_cli::{render, run, Cli, EXIT_MALFORMED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = render(&report.json);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_MALFORMED);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(report.exit_code)
        }
        Err(e) => {
            eprint!("{}", render(&json!({ "error": e.0 })));
            ExitCode::from(EXIT_MALFORMED)
        }
    }
}
