//! Structured report output: one `Report` per CLI invocation, serialized as
//! JSON (byte-identical for identical inputs) or CSV.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A scalar cell of a report row.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}
impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::UInt(v)
    }
}
impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}
impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}
impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl Value {
    fn csv_cell(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::UInt(v) => v.to_string(),
            Value::Float(v) => format!("{v}"),
            Value::Str(s) => {
                if s.contains(',') || s.contains('"') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }
}

pub type Row = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: String,
    pub seed: u64,
    pub thread_count: usize,
    pub elapsed_ms: u64,
}

/// The report emitted on stdout. Maps are ordered, so serialization is
/// deterministic for identical inputs (only `elapsed_ms` varies).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
    pub metadata: Metadata,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema: "1".to_string(),
            command: command.to_string(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: 0,
                thread_count: 1,
                elapsed_ms: 0,
            },
        }
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn push_row(&mut self, cells: Vec<(&str, Value)>) {
        let mut row = Row::new();
        for (k, v) in cells {
            row.insert(k.to_string(), v);
        }
        self.rows.push(row);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// CSV rendering: a parameter preamble (comment lines), then a header
    /// from the union of row keys, then the rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command,{}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "# {k},{}", v.csv_cell());
        }
        let mut keys: Vec<&String> = Vec::new();
        for row in &self.rows {
            for k in row.keys() {
                if !keys.contains(&k) {
                    keys.push(k);
                }
            }
        }
        keys.sort();
        let _ = writeln!(
            out,
            "{}",
            keys.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(",")
        );
        for row in &self.rows {
            let cells: Vec<String> = keys
                .iter()
                .map(|k| row.get(*k).map_or(String::new(), |v| v.csv_cell()))
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}
