//! Columnar numeric results and their CSV encoding.
//!
//! Output is byte-stable: numbers are rounded to 12 significant digits and
//! printed in the shortest form that reads back to the rounded value, with
//! `.` as decimal separator, `,` between fields and `\n` line endings.
//! Missing values (a quantity undefined at that point) are empty fields.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepTable {
    columns: Vec<String>,
    rows: Vec<Vec<Option<f64>>>,
}

impl SweepTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        SweepTable {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row. Every defined value must be finite.
    pub fn push(&mut self, row: Vec<Option<f64>>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Numerical(format!(
                "row has {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        for (value, name) in row.iter().zip(&self.columns) {
            if let Some(v) = value {
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        column: name.clone(),
                    });
                }
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_values(&mut self, row: &[f64]) -> Result<()> {
        self.push(row.iter().copied().map(Some).collect())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Option<f64>>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of a column; `None` where undefined.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|v| v.map(format_number).unwrap_or_default())
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// parses back to the rounded value. Magnitudes outside `[1e-5, 1e15)` use
/// exponent notation.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    let mag = rounded.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}
