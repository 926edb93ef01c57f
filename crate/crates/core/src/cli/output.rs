//! CSV tables and JSON records.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Header row then one line per row; stdout when `path` is `None`.
pub fn emit_csv(header: &[&str], rows: &[Vec<f64>], path: Option<&Path>) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidInput(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| format_float(x))).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    write_to(path, &String::from_utf8_lossy(&bytes))
}

/// One JSON object with sorted keys.
pub fn emit_record<T: Serialize>(record: &T, path: Option<&Path>) -> Result<()> {
    let value = serde_json::to_value(record).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    text.push('\n');
    write_to(path, &text)
}
