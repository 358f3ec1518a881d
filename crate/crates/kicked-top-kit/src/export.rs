//! Tabular results with CSV and JSON export.
//!
//! CSV layout: a `# kicked-top-kit v1` header line, optional further
//! `#`-prefixed metadata lines, one row of column names, then data rows.
//! Floats are serialized with 17 significant digits so a re-parse
//! reproduces them bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::{Error, Result};

/// Magic first line of every CSV file written by the kit.
pub const CSV_HEADER: &str = "# kicked-top-kit v1";

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: &str) -> Self {
        Cell::Text(s.to_string())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            _ => None,
        }
    }
}

/// 17-significant-digit float form; round-trips through parse exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_cell(out: &mut String, cell: &Cell) {
    match cell {
        Cell::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Cell::Float(x) => out.push_str(&fmt_float(*x)),
        Cell::Text(s) => out.push_str(s),
        Cell::Empty => {}
    }
}

/// Column-labelled result table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV text; `meta` lines are emitted as additional `# key: value` lines.
    pub fn to_csv(&self, meta: &[String]) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for line in meta {
            let _ = writeln!(out, "# {line}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_cell(&mut out, cell);
            }
            out.push('\n');
        }
        out
    }

    /// JSON array of row objects; floats keep the 17-digit form.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("  {");
            for (k, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{name}\": ");
                match cell {
                    Cell::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Float(x) => out.push_str(&fmt_float(*x)),
                    Cell::Text(s) => {
                        let _ = write!(out, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
                    }
                    Cell::Empty => out.push_str("null"),
                }
            }
            out.push('}');
            out.push_str(if i + 1 < self.rows.len() { ",\n" } else { "\n" });
        }
        out.push_str("]\n");
        out
    }

    /// Write CSV to `path`; refuses an empty table.
    pub fn write_csv(&self, path: &Path, meta: &[String]) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyTable);
        }
        fs::write(path, self.to_csv(meta))?;
        Ok(())
    }

    /// Write JSON to `path`; refuses an empty table.
    pub fn write_json(&self, path: &Path) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyTable);
        }
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Parse CSV produced by [`Table::to_csv`]. Cells containing `e` or `.`
/// parse as floats, pure integers as ints, anything else as text.
pub fn parse_csv(text: &str) -> Result<Table> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("CSV has no column header".into()))?;
    let mut table = Table::new(header.split(',').collect::<Vec<_>>());
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|field| {
                if field.is_empty() {
                    Cell::Empty
                } else if field.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
                    field.parse::<i64>().map(Cell::Int).unwrap_or_else(|_| Cell::text(field))
                } else if let Ok(x) = field.parse::<f64>() {
                    Cell::Float(x)
                } else {
                    Cell::text(field)
                }
            })
            .collect();
        table.push(row);
    }
    Ok(table)
}
