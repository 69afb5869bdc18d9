//! Command-line front end for the elindep tests: argument definitions, CSV
//! ingestion and the `test`, `simulate` and `moments` commands.

pub mod args;
pub mod input;
pub mod run;

pub use args::{Cli, Command, Format};
pub use input::{parse_csv, read_csv, CsvData, InputError};
pub use run::{cmd_moments, cmd_simulate, cmd_test, CliError, Status};

/// Runs a parsed command line and returns the text to print and the status.
pub fn execute(cli: &Cli) -> Result<(String, Status), CliError> {
    match &cli.command {
        Command::Test(a) => cmd_test(a).map(|s| (s, Status::Ok)),
        Command::Simulate(a) => cmd_simulate(a).map(|s| (s, Status::Ok)),
        Command::Moments(a) => cmd_moments(a),
    }
}

/// Output destination of a parsed command line.
pub fn output_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Test(a) => a.output.output.as_deref(),
        Command::Simulate(a) => a.output.output.as_deref(),
        Command::Moments(a) => a.output.output.as_deref(),
    }
}
