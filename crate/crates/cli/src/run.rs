use crate::args::{Format, MomentsArgs, SimulateArgs, TestArgs};
use crate::input::{parse_csv, read_csv, InputError};
use elindep_core::classical::check_alpha;
use elindep_core::{independence_tests, moment_check, reproduce_table, Error, Grid, McSettings};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

/// Largest simulated-vs-exact z-score `moments` accepts.
pub const MOMENT_Z_LIMIT: f64 = 4.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn is_input_error(e: &Error) -> bool {
    match e {
        Error::HullViolation { .. } | Error::NonConvergence(_) => false,
        Error::Replicates(f) => f.first().is_some_and(|f| is_input_error(&f.error)),
        _ => true,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if is_input_error(&e) {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

/// What a successful run found; only `moments` can report a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    MomentsOutOfRange,
}

/// Same text as the JSON writer produces, so every number printed in CSV
/// or markdown appears identically in the JSON output.
fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float")
    } else {
        x.to_string()
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn markdown(header: &[&str], body: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|k| body.iter().map(|l| l[k].len()).chain([header[k].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    for (k, line) in std::iter::once(&header).chain(body).enumerate() {
        out.push('|');
        for (c, w) in line.iter().zip(&widths) {
            write!(out, " {c:>w$} |").unwrap();
        }
        out.push('\n');
        if k == 0 {
            out.push('|');
            for w in &widths {
                write!(out, "{}:|", "-".repeat(w + 1)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn cmd_test(args: &TestArgs) -> Result<String, CliError> {
    check_alpha(args.alpha)?;
    let data = match &args.input {
        Some(path) if path.as_os_str() != "-" => read_csv(path, args.transpose)?,
        _ => parse_csv(std::io::stdin().lock(), args.transpose)?,
    };
    let reports = independence_tests(&data.matrix, args.alpha).map_err(|e| match e {
        Error::DegenerateColumn { column } => CliError::Input(format!(
            "{} is constant; its correlation is undefined",
            data.label(column)
        )),
        e => e.into(),
    })?;

    Ok(match args.output.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let mut out = String::from("method,statistic,p_value,alpha,reject\n");
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.method,
                    num(r.statistic),
                    num(r.p_value),
                    num(r.alpha),
                    r.reject
                )
                .unwrap();
            }
            out
        }
        Format::Markdown => {
            let body: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.method.to_string(),
                        num(r.statistic),
                        num(r.p_value),
                        num(r.alpha),
                        r.reject.to_string(),
                    ]
                })
                .collect();
            markdown(&["method", "statistic", "p_value", "alpha", "reject"], &body)
        }
    })
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<String, CliError> {
    check_alpha(args.alpha)?;
    let grid = Grid {
        ns: args.ns.clone(),
        ps: args.ps.clone(),
        rhos: args.rhos.clone(),
    };
    let settings = McSettings {
        alpha: args.alpha,
        reps: args.run.reps,
        seed: args.run.seed,
        workers: args.run.worker_count(),
    };
    let tables = args
        .families
        .iter()
        .map(|&f| reproduce_table(f, &grid, &settings).map(|t| t.rounded()))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(match args.output.format {
        Format::Json => to_json(&tables)?,
        Format::Csv => {
            let mut out = String::new();
            for (k, t) in tables.iter().enumerate() {
                let csv = t.to_csv();
                // same grid for every family, so one header line suffices
                let skip = if k == 0 { 0 } else { csv.find('\n').map_or(0, |i| i + 1) };
                out.push_str(&csv[skip..]);
            }
            out
        }
        Format::Markdown => tables
            .iter()
            .map(|t| t.to_markdown())
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

pub fn cmd_moments(args: &MomentsArgs) -> Result<(String, Status), CliError> {
    let checks = args
        .ns
        .iter()
        .map(|&n| moment_check(n, args.run.reps, args.run.seed, args.run.worker_count()))
        .collect::<Result<Vec<_>, _>>()?;
    let worst = checks.iter().fold(0.0_f64, |m, c| m.max(c.max_abs_z()));
    let status = if worst <= MOMENT_Z_LIMIT {
        Status::Ok
    } else {
        Status::MomentsOutOfRange
    };

    let rows: Vec<Vec<String>> = checks
        .iter()
        .flat_map(|c| {
            c.comparisons.iter().map(move |m| {
                vec![
                    c.n.to_string(),
                    c.reps.to_string(),
                    c.seed.to_string(),
                    m.name.to_string(),
                    num(m.expected),
                    num(m.observed),
                    num(m.se),
                    num(m.z),
                ]
            })
        })
        .collect();
    let header = ["n", "reps", "seed", "moment", "expected", "observed", "se", "z"];
    let text = match args.output.format {
        Format::Json => to_json(&checks)?,
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for r in &rows {
                out.push_str(&r.join(","));
                out.push('\n');
            }
            out
        }
        Format::Markdown => markdown(&header, &rows),
    };
    Ok((text, status))
}
