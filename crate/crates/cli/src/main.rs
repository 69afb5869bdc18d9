use clap::Parser;
use elindep_cli::{execute, output_path, Cli, CliError, Status};
use std::io::Write;
use std::process::ExitCode;

fn write_output(cli: &Cli, text: &str) -> Result<(), CliError> {
    match output_path(cli) {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| CliError::Internal(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli).and_then(|(text, status)| write_output(&cli, &text).map(|()| status)) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::MomentsOutOfRange) => {
            eprintln!("elindep: a simulated moment is more than 4 standard errors from its exact value");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("elindep: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
