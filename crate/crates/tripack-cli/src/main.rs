//! Experiment harness for directed-triangle packing and covering.
//!
//! Subcommands: `generate` instance files, `solve` them exactly and
//! fractionally, `round` fractional covers into integral ones, `verify`
//! the exhaustive/statistical suites, and `experiment` for batch sweeps.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! parse error, 3 internal error.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "tripack", version, about = "Packing and covering directed triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Carousel5,
    Planted,
    Tournament,
    Sparse,
    Transitive,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SolveMode {
    #[default]
    Both,
    Exact,
    Lp,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum RoundMode {
    #[default]
    Derandomize,
    Sample,
    Exhaustive,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyScope {
    Lemma51,
    RoundingValidity,
    Frequencies,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file in the digraph text format
    Generate {
        kind: GenerateKind,
        /// Number of planted carousel blocks
        #[arg(long)]
        k: Option<usize>,
        /// Vertex count for tournament, sparse and transitive kinds
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance: integral nu_t/tau_t, fractional optimum, checks
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        mode: SolveMode,
        /// Branch-and-bound node budget
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timings in the document (off by default so
        /// identical runs produce identical bytes)
        #[arg(long)]
        timings: bool,
    },
    /// Peel and round an optimal fractional cover into an integral one
    Round {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        mode: RoundMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples in sample mode
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Run an exhaustive or statistical verification suite
    Verify {
        scope: VerifyScope,
        /// Vertex count (lemma51: 2..=4, rounding-validity: <= 8)
        #[arg(long)]
        n: Option<usize>,
        /// Number of random instances for rounding-validity
        #[arg(long, default_value_t = 50)]
        instances: usize,
        /// Number of samples for frequencies
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Batch-run generate + solve + round over a config file, emit CSV
    Experiment {
        config: PathBuf,
        /// CSV output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad usage or unparseable input: exit 2.
    Input(String),
    /// A solver invariant broke: exit 3.
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { kind, k, n, seed, out } => {
            commands::generate::run(kind, k, n, seed, out.as_deref())
        }
        Command::Solve {
            input,
            mode,
            budget,
            format,
            out,
            timings,
        } => commands::solve::run(&input, mode, budget, format, out.as_deref(), timings),
        Command::Round {
            input,
            mode,
            seed,
            samples,
            format,
            out,
            timings,
        } => commands::round::run(&input, mode, seed, samples, format, out.as_deref(), timings),
        Command::Verify {
            scope,
            n,
            instances,
            samples,
            seed,
        } => commands::verify::run(scope, n, instances, samples, seed),
        Command::Experiment { config, out } => commands::experiment::run(&config, out.as_deref()),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
