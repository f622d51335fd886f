//! Batch CLI over the abfix toolkit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use abfix::cli::{run_file, schema, RunOptions};

#[derive(Parser)]
#[command(name = "abfix", version, about = "Fixed-point solver toolkit", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a problem file and write its outputs.
    Run {
        /// Path to the TOML problem file.
        file: PathBuf,
        /// Override the file's RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for summary/trace/solution files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Fail (exit 3) when a contraction precondition is violated.
        #[arg(long, conflicts_with = "best_effort")]
        strict: bool,
        /// Iterate best-effort past violated preconditions (default).
        #[arg(long)]
        best_effort: bool,
    },
    /// Print the problem-file schema.
    Schema,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Schema => {
            print!("{}", schema::SCHEMA);
            ExitCode::SUCCESS
        }
        Command::Run {
            file,
            seed,
            out_dir,
            strict,
            ..
        } => {
            let opts = RunOptions {
                seed_override: seed,
                out_dir: Some(out_dir),
                strict,
            };
            match run_file(&file, &opts) {
                Ok(outcome) => {
                    println!("{}", outcome.summary_json);
                    ExitCode::SUCCESS
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(err.exit_code() as u8)
                }
            }
        }
    }
}
