//! CSV and JSON rendering.
//!
//! CSV carries scalars as `# key = value` comment lines above a header row;
//! floats are written with 17 significant digits so identical runs give
//! identical bytes. JSON is one object, `{"meta": …, "data": …}`.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        // adding zero turns −0 into +0
        Cell::Num(x + 0.0)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // serde_json maps non-finite floats to null
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A command result: named scalars plus a table.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub scalars: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn scalar(&mut self, key: &str, value: impl Into<Cell>) {
        self.scalars.push((key.to_string(), value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn to_csv(&self, cfg: &RunConfig) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "# herbst {} {}\n",
            self.command,
            env!("CARGO_PKG_VERSION")
        ));
        let meta = serde_json::to_value(cfg).expect("config serializes");
        if let Value::Object(m) = meta {
            for (k, v) in m {
                let v = match v {
                    Value::String(t) => t,
                    Value::Number(n) => match n.as_i64() {
                        Some(i) => i.to_string(),
                        None => fmt_float(n.as_f64().unwrap_or(f64::NAN)),
                    },
                    other => other.to_string(),
                };
                s.push_str(&format!("# config.{k} = {v}\n"));
            }
        }
        for (k, v) in &self.scalars {
            s.push_str(&format!("# {k} = {}\n", v.csv()));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self, cfg: &RunConfig) -> Value {
        let mut data = Map::new();
        for (k, v) in &self.scalars {
            data.insert(k.clone(), v.json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(Cell::json))
                        .collect(),
                )
            })
            .collect();
        data.insert("rows".into(), Value::Array(rows));
        json!({
            "meta": {
                "command": self.command,
                "version": env!("CARGO_PKG_VERSION"),
                "core_version": herbst_core::VERSION,
                "config": cfg,
            },
            "data": data,
        })
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Csv => self.to_csv(cfg),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json(cfg)).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    /// Writes to `cfg.out`, or stdout.
    pub fn emit(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let text = self.render(cfg);
        write_text(cfg.out.as_deref(), &text)
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Validation(format!("cannot write to stdout: {e}")))
        }
    }
}
