//! Flat key=value reports with exact scalars and row-major matrices.

use std::fmt::{self, Display};

use crate::error::{Error, Result};
use crate::exact_linalg::{ExactMatrix, FieldSpec, Scalar};

/// Human lines plus an ordered machine record.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub human: Vec<String>,
    pub record: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn say(&mut self, text: impl Into<String>) -> &mut Self {
        self.human.extend(text.into().lines().map(str::to_string));
        self
    }

    /// Adds a field; keys and values must be single-line.
    pub fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        let v = value.to_string();
        debug_assert!(!key.contains('=') && !key.contains('\n') && !v.contains('\n'));
        self.record.push((key.to_string(), v));
        self
    }

    pub fn put_matrix(&mut self, key: &str, m: &ExactMatrix) -> &mut Self {
        self.put(&format!("{key}.shape"), format!("{}x{}", m.rows(), m.cols()));
        self.put(key, m)
    }

    pub fn put_vector(&mut self, key: &str, v: &[Scalar]) -> &mut Self {
        let s: Vec<String> = v.iter().map(Scalar::plain).collect();
        self.put(key, s.join(","))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.record.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The machine record alone.
    pub fn machine(&self) -> String {
        self.record.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

impl Display for Report {
    /// Human lines as `#` comments, then the record.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.human {
            writeln!(f, "# {h}")?;
        }
        f.write_str(&self.machine())
    }
}

/// Parses report text back into a record; `#` lines and blank lines are skipped.
pub fn parse_record(text: &str) -> Result<Report> {
    let mut r = Report::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(h) = line.strip_prefix('#') {
            r.human.push(h.strip_prefix(' ').unwrap_or(h).to_string());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(Error::Parse {
            line: i + 1,
            col: 1,
            msg: "expected key=value".into(),
        })?;
        r.record.push((k.to_string(), v.to_string()));
    }
    Ok(r)
}

/// Parses a row-major matrix `a,b;c,d` with the given shape `RxC`.
pub fn parse_matrix(value: &str, shape: &str, field: FieldSpec) -> Result<ExactMatrix> {
    let bad = || Error::Parse {
        line: 1,
        col: 1,
        msg: format!("bad matrix shape '{shape}'"),
    };
    let (r, c) = shape.split_once('x').ok_or_else(bad)?;
    let rows: usize = r.parse().map_err(|_| bad())?;
    let cols: usize = c.parse().map_err(|_| bad())?;
    if rows == 0 || cols == 0 {
        return Ok(ExactMatrix::zeros(field, rows, cols));
    }
    let data = value
        .split(';')
        .map(|row| row.split(',').map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if data.len() != rows {
        return Err(Error::Dimension(format!("{} rows for shape {shape}", data.len())));
    }
    ExactMatrix::from_rows(field, cols, data)
}

/// Parses a comma-separated vector.
pub fn parse_vector(value: &str, field: FieldSpec) -> Result<Vec<Scalar>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|s| field.parse_scalar(s)).collect()
}
