use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use owf_core::cli::{run_dump, run_factor_demo, run_kernel, run_verify, Dump, Params, Report, Suite};

#[derive(Parser)]
#[command(name = "owf", version, about = "Verify finite-window Ornstein-Weiss factor maps and coinduction cocycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// JSON config (coinduction setup, or S/action for the doubling suite)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for the sampled checks [default: 1]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of samples or random patterns; each suite has its own default
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Window radius
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Number of tower levels
    #[arg(long, global = true)]
    levels: Option<usize>,
    /// Word-length bound for shifts and group elements
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Statistical check that ow_map pushes uniform bits to uniform pairs
    FactorDemo,
    /// Enumerate kernel windows and check the group structure
    Kernel,
    /// Print a transversal or cocycle table as JSON
    Dump {
        #[arg(value_enum)]
        table: DumpArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    OwFibers,
    OwEquivariance,
    Cocycles,
    Transversal,
    Pipeline,
    Doubling,
    KernelGroup,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpArg {
    Delta,
    Gamma,
    Transversal,
}

fn suite(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::OwFibers => Suite::OwFibers,
        SuiteArg::OwEquivariance => Suite::OwEquivariance,
        SuiteArg::Cocycles => Suite::Cocycles,
        SuiteArg::Transversal => Suite::Transversal,
        SuiteArg::Pipeline => Suite::Pipeline,
        SuiteArg::Doubling => Suite::Doubling,
        SuiteArg::KernelGroup => Suite::KernelGroup,
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("owf: {msg}");
    ExitCode::from(2)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        out(&format!("{}\n", report.to_json()));
    } else {
        out(&report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = &cli.flags;
    let config = match &f.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => return usage_error(format!("cannot read {}: {e}", path.display())),
        },
        None => None,
    };
    let params = Params { seed: f.seed, samples: f.samples, radius: f.radius, levels: f.levels, depth: f.depth };
    let result = match cli.command {
        Command::Verify { suite: s } => run_verify(suite(s), config.as_deref(), &params),
        Command::FactorDemo => run_factor_demo(&params),
        Command::Kernel => run_kernel(&params),
        Command::Dump { table } => {
            let which = match table {
                DumpArg::Delta => Dump::Delta,
                DumpArg::Gamma => Dump::Gamma,
                DumpArg::Transversal => Dump::Transversal,
            };
            return match run_dump(which, config.as_deref(), &params) {
                Ok(v) if f.json => {
                    out(&format!("{v}\n"));
                    ExitCode::SUCCESS
                }
                Ok(serde_json::Value::Array(rows)) => {
                    out(&rows.iter().map(|row| format!("{row}\n")).collect::<String>());
                    ExitCode::SUCCESS
                }
                Ok(v) => {
                    out(&format!("{v}\n"));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            };
        }
    };
    match result {
        Ok(report) => emit(&report, f.json),
        Err(e) => usage_error(e),
    }
}
