mod commands;
mod error;
mod options;
mod output;

use clap::Parser;
use error::CliError;
use options::Cli;
use std::io::Write;
use std::process::ExitCode;

fn run(cli: Cli) -> Result<i32, CliError> {
    let (command, opts) = cli.resolve()?;
    let outcome = commands::dispatch(command, &opts)?;
    let text = output::render(&outcome.value, opts.format.unwrap_or(output::Format::Json))?;
    match &opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if let Some(e) = outcome.failure {
        eprintln!("cone-spectra: {e}");
        return Ok(e.exit_code());
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("cone-spectra: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
