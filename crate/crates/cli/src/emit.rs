//! CSV and JSON output.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

/// Significant digits of every float written to CSV.
pub const SIG_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

fn non_finite_name(v: f64) -> &'static str {
    if v.is_nan() {
        "nan"
    } else if v > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

/// `%.9g`-style: fixed notation for exponents in `-4..9`, scientific otherwise,
/// trailing zeros dropped.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return non_finite_name(v).to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

// Non-finite floats travel as the strings "inf", "-inf", "nan".
impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Float(v) => s.serialize_str(non_finite_name(*v)),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Empty => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct CellVisitor;

        impl Visitor<'_> for CellVisitor {
            type Value = Cell;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, string, boolean or null")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Cell, E> {
                Ok(Cell::Int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Cell, E> {
                i64::try_from(v).map(Cell::Int).map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Cell, E> {
                Ok(Cell::Float(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Cell, E> {
                Ok(match v {
                    "inf" => Cell::Float(f64::INFINITY),
                    "-inf" => Cell::Float(f64::NEG_INFINITY),
                    "nan" => Cell::Float(f64::NAN),
                    _ => Cell::Text(v.to_string()),
                })
            }

            fn visit_bool<E: de::Error>(self, v: bool) -> std::result::Result<Cell, E> {
                Ok(Cell::Bool(v))
            }

            fn visit_unit<E: de::Error>(self) -> std::result::Result<Cell, E> {
                Ok(Cell::Empty)
            }

            fn visit_none<E: de::Error>(self) -> std::result::Result<Cell, E> {
                Ok(Cell::Empty)
            }
        }

        d.deserialize_any(CellVisitor)
    }
}

/// Rows under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<Cell>>) {
        for row in rows {
            self.push(row);
        }
    }
}

/// One row as an ordered `column -> value` object.
#[derive(Debug, Clone, PartialEq)]
pub struct Record(pub Vec<(String, Cell)>);

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Record {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RecordVisitor;

        impl<'de> Visitor<'de> for RecordVisitor {
            type Value = Record;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a row object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Record, A::Error> {
                let mut entries = Vec::new();
                while let Some(entry) = map.next_entry()? {
                    entries.push(entry);
                }
                Ok(Record(entries))
            }
        }

        d.deserialize_map(RecordVisitor)
    }
}

/// The JSON output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub meta: RunConfig,
    pub rows: Vec<Record>,
}

impl Document {
    pub fn new(meta: &RunConfig, table: &Table) -> Self {
        let rows = table
            .rows
            .iter()
            .map(|row| Record(table.columns.iter().cloned().zip(row.iter().cloned()).collect()))
            .collect();
        Document {
            meta: meta.clone(),
            rows,
        }
    }
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(out);
    let ser = |e: csv::Error| CliError::Serialize(format!("writing CSV: {e}"));
    w.write_record(&table.columns).map_err(ser)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::to_csv)).map_err(ser)?;
    }
    w.flush().map_err(|source| CliError::Io {
        context: "writing CSV".into(),
        source,
    })
}

pub fn write_json<W: Write>(meta: &RunConfig, table: &Table, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &Document::new(meta, table))
        .map_err(|e| CliError::Serialize(format!("writing JSON: {e}")))?;
    writeln!(out).and_then(|_| out.flush()).map_err(|source| CliError::Io {
        context: "writing JSON".into(),
        source,
    })
}

/// Writes `table` in the configured format to the configured destination.
pub fn emit(meta: &RunConfig, table: &Table) -> Result<()> {
    let sink: Box<dyn Write> = match &meta.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|source| CliError::Io {
            context: format!("cannot create {path}"),
            source,
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match meta.format {
        Format::Csv => write_csv(table, sink),
        Format::Json => write_json(meta, table, sink),
    }
}
