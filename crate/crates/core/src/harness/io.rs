//! Matrix and vector CSV files: plain comma-separated decimals, no header.
//! A matrix is `n` rows of `n` values; a vector is a single row.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{validate_interaction, validate_simplex, InteractionMatrix, SimplexVector};
use crate::trajectory::fmt_real;

fn parse_rows(text: &str, path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| {
                let f = f.trim();
                f.parse::<f64>().map_err(|e| Error::Parse {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: format!("`{f}`: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: format!("ragged row: {} fields, expected {first}", row.len()),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Parses matrix CSV text into raw rows (not yet validated).
pub fn parse_matrix_csv(text: &str, path: &Path) -> Result<Vec<Vec<f64>>> {
    let rows = parse_rows(text, path)?;
    if rows.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: "no rows".into(),
        });
    }
    Ok(rows)
}

pub fn read_matrix(path: &Path) -> Result<InteractionMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    validate_interaction(&parse_matrix_csv(&text, path)?)
}

pub fn parse_vector_csv(text: &str, path: &Path) -> Result<Vec<f64>> {
    let mut rows = parse_rows(text, path)?;
    match rows.len() {
        1 => Ok(rows.pop().unwrap()),
        k => Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("vector file must have exactly one row, found {k}"),
        }),
    }
}

pub fn read_vector(path: &Path) -> Result<SimplexVector> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    validate_simplex(&parse_vector_csv(&text, path)?)
}

fn join(values: &[f64]) -> String {
    let mut s = String::new();
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        write!(s, "{}", fmt_real(*v)).unwrap();
    }
    s
}

pub fn matrix_to_csv(c: &InteractionMatrix) -> String {
    let mut out = String::new();
    for i in 0..c.n() {
        out.push_str(&join(c.row(i)));
        out.push('\n');
    }
    out
}

pub fn vector_to_csv(x: &[f64]) -> String {
    let mut out = join(x);
    out.push('\n');
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
