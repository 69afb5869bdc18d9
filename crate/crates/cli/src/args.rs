use clap::{Args, Parser, Subcommand, ValueEnum};
use elindep_core::Family;
use std::path::PathBuf;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "elindep",
    version,
    about = "Tests for complete independence of high-dimensional data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the three independence tests on a CSV data set.
    Test(TestArgs),
    /// Estimate rejection rates over a grid of simulated scenarios.
    Simulate(SimulateArgs),
    /// Compare simulated null moments of r^2 with their exact values.
    Moments(MomentsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Master seed.
    #[arg(long, env = "ELINDEP_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Worker threads (defaults to the number of available cores).
    #[arg(long, env = "ELINDEP_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,

    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u32).range(1..))]
    pub reps: u32,
}

impl RunArgs {
    pub fn worker_count(&self) -> usize {
        match self.workers {
            Some(w) => w as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TestArgs {
    /// CSV file, rows are observations; reads stdin when omitted or "-".
    pub input: Option<PathBuf>,

    /// Rows of the file are variables and columns are observations.
    #[arg(long)]
    pub transpose: bool,

    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long = "family", value_delimiter = ',', default_value = "normal")]
    pub families: Vec<Family>,

    #[arg(long = "n", value_delimiter = ',', default_values_t = [20, 50, 100])]
    pub ns: Vec<usize>,

    #[arg(long = "p", value_delimiter = ',', default_values_t = [10, 20, 50, 100])]
    pub ps: Vec<usize>,

    #[arg(long = "rho", value_delimiter = ',', default_values_t = [0.0, 0.02, 0.05])]
    pub rhos: Vec<f64>,

    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,

    #[command(flatten)]
    pub run: RunArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    #[arg(long = "n", value_delimiter = ',', default_values_t = [10, 20, 50])]
    pub ns: Vec<usize>,

    #[command(flatten)]
    pub run: RunArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}
