//! CSV tables with `#` metadata lines, and dependency-free SVG plots.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so the
//! same inputs always give byte-identical files. Files are written to a
//! temporary sibling and renamed into place; a failed run never leaves a
//! half-written file behind.

use std::fmt::Display;
use std::io::{self, Write};
use std::path::Path;

use crate::simulator::{FieldState, FrontTrace};

pub mod svg;

/// Crate name and version, recorded in every file header.
pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// A numeric table with free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    meta: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            meta: vec![("tool".into(), TOOL_VERSION.into())],
            columns: columns.iter().map(|c| c.as_ref().to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Display) -> Self {
        self.push_meta(key, value);
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl Display) {
        // keep every entry on its own comment line
        let value = value.to_string().replace(['\n', '\r'], " ");
        self.meta.push((key.to_owned(), value));
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn meta(&self) -> &[(String, String)] {
        &self.meta
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::WriterBuilder::new().from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_number(v)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn write_file(&self, path: &Path) -> io::Result<()> {
        write_atomic(path, self.to_csv_string().as_bytes())
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `t, x_front` columns.
pub fn trace_table(trace: &FrontTrace) -> Table {
    let mut table = Table::new(&["t", "x_front"]);
    for &(t, x) in trace.samples() {
        table.push_row(vec![t, x]);
    }
    table
}

/// `x, y, u` columns, one row per node, `x` varying fastest.
pub fn field_table(state: &FieldState) -> Table {
    let g = &state.grid;
    let mut table = Table::new(&["x", "y", "u"])
        .with_meta("t", state.t)
        .with_meta("grid", format!("nx={} ny={} dx={} dy={} x0={}", g.nx, g.ny, g.dx, g.dy, g.x0));
    for j in 0..g.ny {
        for i in 0..g.nx {
            table.push_row(vec![g.x(i), g.y(j), state.at(i, j)]);
        }
    }
    table
}
