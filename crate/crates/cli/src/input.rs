//! CSV ingestion.
//!
//! Rows are observations and columns are variables unless `transpose` is
//! set. A first line whose fields are all non-numeric is taken as a header.

use elindep_core::DataMatrix;
use std::io::Read;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("line {line}: expected {expected} fields, found {got}")]
    RowLength { line: u64, expected: usize, got: usize },

    #[error("line {line}, column {column}: '{value}' is not a finite number")]
    NotNumeric {
        line: u64,
        column: usize,
        value: String,
    },

    #[error("no data rows")]
    Empty,

    #[error("{0}")]
    Data(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A parsed data set with a display label per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvData {
    pub matrix: DataMatrix,
    pub labels: Vec<String>,
}

impl CsvData {
    /// Label of 0-based variable `k`.
    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }
}

fn parse_cell(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn looks_numeric(s: &str) -> bool {
    // "nan" and "inf" parse as floats but are names in a header
    s.parse::<f64>().is_ok_and(f64::is_finite)
}

pub fn parse_csv<R: Read>(reader: R, transpose: bool) -> Result<CsvData, InputError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut header: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut lines: Vec<u64> = Vec::new();
    let mut width = 0;
    let mut record = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                return Err(InputError::Csv {
                    line,
                    message: e.to_string(),
                });
            }
        }
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if header.is_none() && rows.is_empty() && !record.iter().any(looks_numeric) {
            width = record.len();
            header = Some(record.iter().map(str::to_string).collect());
            continue;
        }
        if width == 0 {
            width = record.len();
        } else if record.len() != width {
            return Err(InputError::RowLength {
                line,
                expected: width,
                got: record.len(),
            });
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(j, s)| {
                parse_cell(s).ok_or_else(|| InputError::NotNumeric {
                    line,
                    column: j + 1,
                    value: s.to_string(),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(InputError::Empty);
    }

    let (rows, labels) = if transpose {
        let cols = (0..width)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        let labels = lines.iter().map(|l| format!("line {l}")).collect();
        (cols, labels)
    } else {
        let labels = match header {
            Some(h) => h
                .into_iter()
                .enumerate()
                .map(|(j, name)| format!("column {} ('{name}')", j + 1))
                .collect(),
            None => (1..=width).map(|j| format!("column {j}")).collect(),
        };
        (rows, labels)
    };
    let matrix = DataMatrix::from_rows(&rows).map_err(|e| InputError::Data(e.to_string()))?;
    Ok(CsvData { matrix, labels })
}

pub fn read_csv(path: &std::path::Path, transpose: bool) -> Result<CsvData, InputError> {
    let file = std::fs::File::open(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv(std::io::BufReader::new(file), transpose)
}
