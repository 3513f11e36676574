//! Report documents and their CSV/JSON encodings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    fn to_csv(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.16e}"),
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Int(i) => i as f64,
            Cell::Float(x) => x,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i64::from(i))
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Results {
    Table(Table),
    Object(Map<String, Value>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    /// Seconds since the epoch from `SOURCE_DATE_EPOCH`, if set.
    pub timestamp: Option<u64>,
    pub subcommand: String,
    pub parameters: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub results: Results,
    pub diagnostics: BTreeMap<String, Value>,
}

impl ReportDocument {
    /// Pretty JSON with keys in sorted order at every level.
    pub fn to_json(&self) -> String {
        // Going through Value re-sorts struct fields alphabetically.
        let v = serde_json::to_value(self).expect("report is serializable");
        let mut s = serde_json::to_string_pretty(&v).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Header row plus one line per result row. `None` for object results.
    pub fn to_csv(&self) -> Option<String> {
        let Results::Table(table) = &self.results else {
            return None;
        };
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&table.columns).ok()?;
        for row in &table.rows {
            w.write_record(row.iter().map(|c| c.to_csv())).ok()?;
        }
        String::from_utf8(w.into_inner().ok()?).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(rows: Vec<Vec<Cell>>) -> ReportDocument {
        ReportDocument {
            metadata: Metadata {
                tool: "t".into(),
                version: "0".into(),
                timestamp: None,
                subcommand: "spectrum".into(),
                parameters: BTreeMap::from([("gamma".to_string(), Value::from(0.5))]),
            },
            results: Results::Table(Table {
                columns: vec!["n".into(), "x".into()],
                rows,
            }),
            diagnostics: BTreeMap::from([("warnings".to_string(), Value::Array(vec![]))]),
        }
    }

    #[test]
    fn csv_floats_carry_17_digits() {
        let d = doc(vec![vec![Cell::Int(3), Cell::Float(1.0 / 3.0)]]);
        assert_eq!(d.to_csv().unwrap(), "n,x\n3,3.3333333333333331e-1\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let d = doc(vec![]);
        assert_eq!(d.to_csv().unwrap(), "n,x\n");
        let v: Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["results"]["rows"], Value::Array(vec![]));
    }

    #[test]
    fn json_keys_are_sorted() {
        let s = doc(vec![]).to_json();
        let pos = |k: &str| s.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("diagnostics") < pos("metadata") && pos("metadata") < pos("results"));
        assert!(pos("parameters") < pos("subcommand") && pos("subcommand") < pos("timestamp"));
    }

    #[test]
    fn json_and_csv_round_trip() {
        let x = [0.1, -2.5e-300, 6.02214076e23, std::f64::consts::PI];
        let d = doc(x
            .iter()
            .enumerate()
            .map(|(i, &v)| vec![Cell::from(i), Cell::from(v)])
            .collect());
        let back = ReportDocument::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let csv = back.to_csv().unwrap();
        for (line, &v) in csv.lines().skip(1).zip(&x) {
            let parsed: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert_eq!(parsed, v);
        }
    }

    #[test]
    fn object_results_have_no_csv() {
        let mut d = doc(vec![]);
        d.results = Results::Object(Map::new());
        assert!(d.to_csv().is_none());
        assert_eq!(ReportDocument::from_json(&d.to_json()).unwrap(), d);
    }
}
