//! Matrix and point-list JSON files.
//!
//! Matrix format: `{"n": 3, "entries": [[re, im], ...]}`, row-major,
//! exactly n^2 entries. Writers emit 17 significant digits so values
//! round-trip exactly; readers report the row and column of any offending
//! entry.

use crate::mat::{CMatrix, Complex64, MatError};
use serde_json::Value;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing or invalid field '{0}'")]
    Field(&'static str),
    #[error("expected {expected} entries for n = {n}, got {actual}")]
    WrongEntryCount {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("bad entry at row {row}, col {col}: {reason}")]
    BadEntry {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("bad point at index {index}: {reason}")]
    BadPoint { index: usize, reason: String },
    #[error(transparent)]
    Matrix(#[from] MatError),
}

fn parse_pair(v: &Value) -> Result<Complex64, String> {
    let arr = v.as_array().ok_or("expected a [re, im] pair")?;
    if arr.len() != 2 {
        return Err(format!("expected 2 components, got {}", arr.len()));
    }
    let re = arr[0].as_f64().ok_or("re is not a number")?;
    let im = arr[1].as_f64().ok_or("im is not a number")?;
    Ok(Complex64::new(re, im))
}

pub fn parse_matrix_json(text: &str) -> Result<CMatrix, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let n = root
        .get("n")
        .and_then(Value::as_u64)
        .ok_or(IoError::Field("n"))? as usize;
    if n == 0 {
        return Err(IoError::Field("n"));
    }
    let entries = root
        .get("entries")
        .and_then(Value::as_array)
        .ok_or(IoError::Field("entries"))?;
    if entries.len() != n * n {
        return Err(IoError::WrongEntryCount {
            n,
            expected: n * n,
            actual: entries.len(),
        });
    }
    let mut data = Vec::with_capacity(n * n);
    for (k, v) in entries.iter().enumerate() {
        let z = parse_pair(v).map_err(|reason| IoError::BadEntry {
            row: k / n,
            col: k % n,
            reason,
        })?;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(IoError::BadEntry {
                row: k / n,
                col: k % n,
                reason: "entry is not finite".into(),
            });
        }
        data.push(z);
    }
    Ok(CMatrix::from_data(n, data)?)
}

pub fn read_matrix(path: &Path) -> Result<CMatrix, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix_json(&text)
}

/// 17 significant digits; round-trips any f64 exactly.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn matrix_to_json(a: &CMatrix) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"n\": {}, \"entries\": [", a.dim());
    for (k, z) in a.data().iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "[{}, {}]", fmt_g17(z.re), fmt_g17(z.im));
    }
    out.push_str("]}\n");
    out
}

pub fn write_matrix(path: &Path, a: &CMatrix) -> Result<(), IoError> {
    std::fs::write(path, matrix_to_json(a)).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Point lists: `[[re, im], ...]`.
pub fn parse_points_json(text: &str) -> Result<Vec<Complex64>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let arr = root.as_array().ok_or(IoError::Field("points"))?;
    arr.iter()
        .enumerate()
        .map(|(index, v)| {
            parse_pair(v).map_err(|reason| IoError::BadPoint { index, reason })
        })
        .collect()
}

pub fn read_points(path: &Path) -> Result<Vec<Complex64>, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_points_json(&text)
}
