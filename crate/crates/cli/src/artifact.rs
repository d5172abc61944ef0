//! Artifact rendering: CSV tables with full double precision and JSON reports.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    /// Floats are written with 17 significant digits.
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Artifact {
    Table(Table),
    Report(Value),
}

impl Artifact {
    pub fn report(value: &impl Serialize) -> Self {
        Artifact::Report(serde_json::to_value(value).expect("reports serialize"))
    }

    pub fn default_format(&self) -> Format {
        match self {
            Artifact::Table(_) => Format::Csv,
            Artifact::Report(_) => Format::Json,
        }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, String> {
        match (self, format) {
            (Artifact::Table(t), Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.header).map_err(|e| e.to_string())?;
                for row in &t.rows {
                    w.write_record(row.iter().map(Cell::csv_text)).map_err(|e| e.to_string())?;
                }
                w.into_inner().map_err(|e| e.to_string())
            }
            (Artifact::Table(t), Format::Json) => {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = t.header.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                        Value::Object(obj)
                    })
                    .collect();
                to_json(&Value::Array(rows))
            }
            (Artifact::Report(v), Format::Json) => to_json(v),
            (Artifact::Report(_), Format::Csv) => Err("this experiment produces a JSON report; use --format json".into()),
        }
    }
}

fn to_json(v: &Value) -> Result<Vec<u8>, String> {
    let mut bytes = serde_json::to_vec_pretty(v).map_err(|e| e.to_string())?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
