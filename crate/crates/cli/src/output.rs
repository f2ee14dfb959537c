//! Output envelope and its JSON / CSV renderings.
//!
//! JSON floats carry 17 significant digits so they round-trip; CSV floats carry 6.
//! Non-finite floats and missing values become `null` in JSON and empty cells in CSV.

use std::io::Write;

use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Float)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Float(v) if v.is_finite() => {
                let rounded: f64 = format!("{v:.5e}").parse().expect("formatted float");
                let mag = rounded.abs();
                if rounded == 0.0 || (1e-4..1e15).contains(&mag) {
                    format!("{rounded}")
                } else {
                    format!("{rounded:e}")
                }
            }
            Cell::Float(_) | Cell::Null => String::new(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Float(v) if v.is_finite() => {
                let raw = RawValue::from_string(format!("{v:.16e}"))
                    .map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Cell::Float(_) | Cell::Null => s.serialize_none(),
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

/// Ordered key-value pairs, serialized as a JSON object.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Cell)>);

impl Record {
    pub fn push(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.push(key, value);
        self
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

struct Rows<'a>(&'a [Record]);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for r in self.0 {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub command: String,
    pub parameters: Record,
    pub rows: Vec<Record>,
    pub tool_version: String,
    pub rng_seed: Option<u64>,
}

impl Envelope {
    pub fn new(command: &str, parameters: Record) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            rows: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            rng_seed: None,
        }
    }
}

impl Serialize for Envelope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("command", &self.command)?;
        map.serialize_entry("parameters", &self.parameters)?;
        map.serialize_entry("rows", &Rows(&self.rows))?;
        map.serialize_entry("tool_version", &self.tool_version)?;
        map.serialize_entry("rng_seed", &self.rng_seed)?;
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn render<W: Write>(env: &Envelope, format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, env)?;
            writeln!(out)
        }
        Format::Csv => write_csv(env, out),
    }
}

fn write_csv<W: Write>(env: &Envelope, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = env.rows.first() {
        w.write_record(first.0.iter().map(|(k, _)| k.as_str()))?;
    }
    for row in &env.rows {
        w.write_record(row.0.iter().map(|(_, v)| v.csv_text()))?;
    }
    w.flush()
}
