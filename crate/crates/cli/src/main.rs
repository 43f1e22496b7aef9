use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use bondcat_cli::commands::report_value;
use bondcat_cli::format::render;
use bondcat_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if let Err(e) = emit(&cli, &r.text) {
                eprintln!("error: {e}");
                return ExitCode::from(e.code());
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            if let (true, CliError::Invalid { what, report }) = (cli.json, &e) {
                print!("{}", render(&report_value(what, report)));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Write { path: path.display().to_string(), message: e.to_string() }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Write { path: "stdout".into(), message: e.to_string() })
        }
    }
}
