//! CSV input and output of paired samples.
//!
//! Files are comma-separated UTF-8 with a mandatory header naming the
//! columns `x1..xp` then `y1..yp`. Data rows are numbered from 1 (the header
//! is not counted).

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use sicov_core::PairedSample;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("file is empty")]
    Empty,

    #[error("header has no columns")]
    EmptyHeader,

    #[error("unexpected header column {found:?} at position {position}; expected {expected:?}")]
    BadHeader { position: usize, found: String, expected: String },

    #[error("margin dimension mismatch: {x_cols} x columns ({x_names}) but {y_cols} y columns ({y_names})")]
    DimensionMismatch { x_cols: usize, y_cols: usize, x_names: String, y_names: String },

    #[error("header declares p = {found}, expected p = {declared}")]
    DeclaredDimension { declared: usize, found: usize },

    #[error("file has a header but no data rows")]
    NoRows,

    #[error("row {row}: expected {expected} fields, found {found}")]
    FieldCount { row: usize, expected: usize, found: usize },

    #[error("row {row}, column {column}: {value:?} is not a number")]
    NonNumeric { row: usize, column: String, value: String },

    #[error("row {row}, column {column}: non-finite value {value:?}")]
    NonFinite { row: usize, column: String, value: String },

    #[error("row {row}: {message}")]
    Malformed { row: usize, message: String },
}

/// Loads a sample whose header must declare margins of dimension `p`.
pub fn load_csv(path: impl AsRef<Path>, p: usize) -> Result<PairedSample, LoadError> {
    load_with(path.as_ref(), Some(p))
}

/// Loads a sample, taking `p` from the header.
pub fn load_csv_infer(path: impl AsRef<Path>) -> Result<PairedSample, LoadError> {
    load_with(path.as_ref(), None)
}

fn load_with(path: &Path, p: Option<usize>) -> Result<PairedSample, LoadError> {
    let io = |source| LoadError::Io { path: path.display().to_string(), source };
    let mut text = String::new();
    File::open(path).map_err(io)?.read_to_string(&mut text).map_err(io)?;
    parse_csv(&text, p)
}

/// Parses CSV text; `p = None` infers the dimension from the header.
pub fn parse_csv(text: &str, p: Option<usize>) -> Result<PairedSample, LoadError> {
    if text.trim().is_empty() {
        return Err(LoadError::Empty);
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| LoadError::Malformed { row: 0, message: e.to_string() })?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let width = check_header(&header, p)?;

    let mut x = Vec::new();
    let mut y = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| LoadError::Malformed { row, message: e.to_string() })?;
        if record.len() != 2 * width {
            return Err(LoadError::FieldCount { row, expected: 2 * width, found: record.len() });
        }
        for (col, cell) in record.iter().enumerate() {
            let cell = cell.trim();
            let column = header[col].clone();
            let v: f64 = cell
                .parse()
                .map_err(|_| LoadError::NonNumeric { row, column: column.clone(), value: cell.to_string() })?;
            if !v.is_finite() {
                return Err(LoadError::NonFinite { row, column, value: cell.to_string() });
            }
            if col < width { x.push(v) } else { y.push(v) }
        }
    }
    if x.is_empty() {
        return Err(LoadError::NoRows);
    }
    // all structural checks are done above; this cannot fail on valid rows
    PairedSample::new(x, y, width).map_err(|e| LoadError::Malformed { row: 0, message: e.to_string() })
}

fn check_header(header: &[String], declared: Option<usize>) -> Result<usize, LoadError> {
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(LoadError::EmptyHeader);
    }
    let x_cols = header.iter().take_while(|h| h.starts_with('x')).count();
    let y_cols = header.len() - x_cols;
    if x_cols != y_cols {
        let (xs, ys) = header.split_at(x_cols);
        return Err(LoadError::DimensionMismatch { x_cols, y_cols, x_names: xs.join(", "), y_names: ys.join(", ") });
    }
    for (pos, h) in header.iter().enumerate() {
        let expected = if pos < x_cols { format!("x{}", pos + 1) } else { format!("y{}", pos - x_cols + 1) };
        if *h != expected {
            return Err(LoadError::BadHeader { position: pos + 1, found: h.clone(), expected });
        }
    }
    if let Some(declared) = declared {
        if declared != x_cols {
            return Err(LoadError::DeclaredDimension { declared, found: x_cols });
        }
    }
    Ok(x_cols)
}

/// Writes a sample with the standard header. Values use the shortest
/// representation that parses back to the same double.
pub fn write_csv<W: Write>(sample: &PairedSample, mut out: W) -> std::io::Result<()> {
    let p = sample.p();
    let names: Vec<String> = (1..=p).map(|k| format!("x{k}")).chain((1..=p).map(|k| format!("y{k}"))).collect();
    writeln!(out, "{}", names.join(","))?;
    for i in 0..sample.n() {
        let cells: Vec<String> = sample.x_row(i).iter().chain(sample.y_row(i)).map(|v| format!("{v:?}")).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}
