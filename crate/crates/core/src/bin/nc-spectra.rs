use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nc_spectra::runner::{self, Command, Format, EXIT_CONFIG};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Spectrum,
    Verify,
    Sweep,
    Limits,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

/// Spectra of coupled oscillators in noncommutative phase space.
#[derive(Debug, Parser)]
#[command(name = "nc-spectra", version)]
struct Cli {
    command: Cmd,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Fmt,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Spectrum => Command::Spectrum,
        Cmd::Verify => Command::Verify,
        Cmd::Sweep => Command::Sweep,
        Cmd::Limits => Command::Limits,
    };
    let format = match cli.format {
        Fmt::Json => Format::Json,
        Fmt::Csv => Format::Csv,
    };

    match runner::run_file(command, &cli.config, format) {
        Ok(outcome) => {
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_CONFIG as u8);
                    }
                }
                None => print!("{}", outcome.body),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
