//! Table rendering: one in-memory table, three serializations.
//!
//! Every subcommand assembles a [`Table`] and hands it to [`emit`]; the
//! renderers are pure functions of the table, so identical configurations
//! produce byte-identical files.
//!
//! CSV follows RFC 4180 conventions with a header row, `.` as the decimal
//! separator and scientific notation `d.ddd...e+dd`. JSON wraps the rows in
//! `{meta: {...}, rows: [...]}` with numeric cells as decimal strings (see
//! docs/json-schema.md). The gnuplot form is whitespace-separated columns
//! behind a `#` header.

use std::io::Write;

use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;

/// Run metadata attached to every output.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub z: Vec<String>,
    pub nmax: usize,
    pub precision_bits: u32,
    pub version: &'static str,
}

impl Meta {
    pub fn from_config(cfg: &RunConfig) -> Self {
        Self {
            z: cfg.z_values.clone(),
            nmax: cfg.n_max,
            precision_bits: cfg.precision_bits,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    /// Numeric value pre-rendered in scientific notation.
    Num(String),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(s) => serde_json::Value::String(s.clone()),
            Cell::Int(v) => serde_json::Value::Number((*v).into()),
            Cell::Text(s) => serde_json::Value::String(s.clone()),
            Cell::Empty => serde_json::Value::Null,
        }
    }

    fn gnuplot(&self) -> String {
        match self {
            Cell::Num(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.replace(' ', "_"),
            Cell::Empty => "-".into(),
        }
    }
}

/// Column-ordered table with metadata.
#[derive(Debug, Clone)]
pub struct Table {
    pub meta: Meta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(meta: Meta, columns: Vec<&'static str>) -> Self {
        Self {
            meta,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        let doc = serde_json::json!({
            "meta": self.meta,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    fn render_gnuplot(&self) -> String {
        let mut s = String::new();
        s.push_str("# ");
        s.push_str(&self.columns.join(" "));
        s.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::gnuplot).collect();
            s.push_str(&fields.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
            OutputFormat::Gnuplot => self.render_gnuplot(),
        }
    }
}

/// Write the rendered table to `--out` or stdout.
pub fn emit(table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    let rendered = table.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::Config(format!("stdout: {e}")))
        }
    }
}
