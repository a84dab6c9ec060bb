use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use basepoints_cli::{run, Format, RunConfig};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "basepoints", version, about = "Weighted cluster of base points of an ideal of C{x,y}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the base points of the ideal in a file (one generator per line).
    Compute {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Include the intermediate clusters of the computation.
        #[arg(long)]
        intermediates: bool,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let Command::Compute { ideal, format, intermediates, out } = Cli::parse().command;
    let cfg = RunConfig { input: ideal, format, intermediates, output: out };
    match run(&cfg) {
        Ok(text) => {
            if cfg.output.is_none() {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(text.as_bytes()).is_err() {
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
