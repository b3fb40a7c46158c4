//! Machine-readable report tables: versioned CSV and JSON renderings with
//! deterministic number formatting (shortest round-trip decimals).

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Flag(bool),
}

impl Cell {
    /// Deterministic text form; infinities spelled out so CSV stays lossless.
    pub fn render(&self) -> String {
        match self {
            Cell::Real(v) => {
                if v.is_nan() {
                    "nan".into()
                } else if *v == f64::INFINITY {
                    "inf".into()
                } else if *v == f64::NEG_INFINITY {
                    "-inf".into()
                } else {
                    format!("{v}")
                }
            }
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => if *b { "true" } else { "false" }.into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Real(v) if v.is_finite() => json!(v),
            Cell::Real(_) => Value::String(self.render()),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

/// A report: parameter provenance pairs plus a fixed-order column table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(meta: Vec<(String, String)>, columns: &[&str]) -> Self {
        Table {
            meta,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// First line `schema=1`, then the header row (parameter provenance
    /// columns first, repeated per row), then the data rows.
    pub fn to_csv(&self) -> String {
        let mut wtr = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        wtr.write_record(["schema=1"]).expect("in-memory write");
        let header: Vec<String> = self
            .meta
            .iter()
            .map(|(k, _)| k.clone())
            .chain(self.columns.iter().cloned())
            .collect();
        wtr.write_record(&header).expect("in-memory write");
        for cells in &self.rows {
            let record: Vec<String> = self
                .meta
                .iter()
                .map(|(_, v)| v.clone())
                .chain(cells.iter().map(Cell::render))
                .collect();
            wtr.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf8")
    }

    /// `{ "schema": 1, "meta": {...}, "rows": [ {col: value, ...}, ... ] }`.
    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (k, v) in &self.meta {
            meta.insert(k.clone(), Value::String(v.clone()));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|cells| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(cells) {
                    obj.insert(col.clone(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "schema": 1, "meta": Value::Object(meta), "rows": rows });
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }
}
