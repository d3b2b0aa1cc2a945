//! Deterministic output: fixed float format, fixed column order, no
//! timestamps. Two runs on the same inputs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

/// C-style %.12e formatting: sign, 12 fractional digits, two-digit
/// signed exponent. Negative zero is normalized.
pub fn fmt_e(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let e: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

/// RFC 4180 quoting for text fields that embed separators or quotes.
fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One output cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt_e(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => csv_quote(s),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Float(x) => serde_json::json!(x),
            Cell::Int(i) => serde_json::json!(i),
            Cell::Text(s) => serde_json::json!(s),
        }
    }
}

/// Column-ordered table shared by the data subcommands.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<String>) -> Self {
        Self {
            command,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::to_json).collect())
            .collect();
        let doc = serde_json::json!({
            "schema_version": 1,
            "command": self.command,
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serialization");
        text.push('\n');
        text
    }
}

/// Output format of data files and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Write to the path when given, otherwise to stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing stdout")
        }
    }
}

/// Complex tensor column names: re_<name>_xx, im_<name>_xx, ... row-major.
pub fn tensor_columns(name: &str) -> Vec<String> {
    const AXES: [char; 3] = ['x', 'y', 'z'];
    let mut cols = Vec::with_capacity(18);
    for row in AXES {
        for col in AXES {
            cols.push(format!("re_{name}_{row}{col}"));
            cols.push(format!("im_{name}_{row}{col}"));
        }
    }
    cols
}

/// Push the 18 components of a tensor in the [`tensor_columns`] order.
pub fn push_tensor(row: &mut Vec<Cell>, t: &mqed_core::CTensor3) {
    for r in 0..3 {
        for c in 0..3 {
            row.push(Cell::Float(t[(r, c)].re));
            row.push(Cell::Float(t[(r, c)].im));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_c_style() {
        assert_eq!(fmt_e(4.0 / 3.0), "1.333333333333e+00");
        assert_eq!(fmt_e(0.0), "0.000000000000e+00");
        assert_eq!(fmt_e(-0.0), "0.000000000000e+00");
        assert_eq!(fmt_e(-4.0), "-4.000000000000e+00");
        assert_eq!(fmt_e(1.5e-11), "1.500000000000e-11");
        assert_eq!(fmt_e(6.02e23), "6.020000000000e+23");
        assert_eq!(fmt_e(1e123), "1.000000000000e+123");
    }

    #[test]
    fn csv_layout_is_stable() {
        let mut t = Table::new("demo", vec!["a".into(), "b".into()]);
        t.push_row(vec![Cell::Int(1), Cell::Float(0.5)]);
        assert_eq!(t.to_csv(), "a,b\n1,5.000000000000e-01\n");
    }
}
