use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use swarmbench_cli::commands::{self, Measure};
use swarmbench_cli::config::{parse_experiment, seed_from_env};
use swarmbench_cli::error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "swarmbench", version, about = "Run and compare swarm optimizers on benchmark problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every (algorithm, seed) pair of an experiment file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Run directory; overrides `output` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (seeds run in parallel).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare two algorithms from a run directory.
    Compare {
        dir: PathBuf,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "budget")]
        measure: Measure,
        /// Report file; defaults to DIR/reports/A-vs-B-MEASURE.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write mean and std best-so-far curves as CSV.
    Curve {
        dir: PathBuf,
        #[arg(required = true)]
        algorithms: Vec<String>,
        /// CSV file; defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    ListFunctions,
    ListAlgorithms,
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { config, out, jobs } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::other(format!("cannot read {}: {e}", config.display())))?;
            let base = config.parent().map(PathBuf::from).unwrap_or_default();
            let ex = parse_experiment(&text, &base, seed_from_env()?)?;
            let dir = out
                .or_else(|| ex.output.clone())
                .ok_or_else(|| CliError::parse("no output directory: pass --out or set `output` in [experiment]"))?;
            let manifest = commands::cmd_run(&ex, &dir, jobs)?;
            println!("wrote {} records to {}", manifest.files.len(), dir.display());
        }
        Command::Compare { dir, a, b, measure, out } => {
            let report = commands::cmd_compare(&dir, &a, &b, measure)?;
            let path = out.unwrap_or_else(|| commands::default_report_path(&dir, &a, &b, measure));
            commands::write_report(&path, &report)?;
            print!("{}", report.render(&a, &b));
        }
        Command::Curve { dir, algorithms, out } => {
            let csv = commands::cmd_curve(&dir, &algorithms)?;
            match out {
                Some(path) => swarmbench_cli::manifest::write_atomic(&path, csv.as_bytes())?,
                None => print!("{csv}"),
            }
        }
        Command::ListFunctions => print!("{}", commands::list_functions()),
        Command::ListAlgorithms => print!("{}", commands::list_algorithms()),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
