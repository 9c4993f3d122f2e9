//! Report tables and their CSV/JSON renderings.
//!
//! CSV: a `# schema=...` line, then the header row, then one row per table
//! entry. JSON: the same table as an array of objects, plus the config echo,
//! a summary object and (optionally) the per-trial records.

use std::fmt::Write as _;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    /// Not applicable at this row.
    Na,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Na, Cell::Num)
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) if v.is_nan() => "na".into(),
            Cell::Num(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Num(v) => format!("{v}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Na => "na".into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => Value::from(*v),
            Cell::Int(v) => Value::from(*v),
            other => Value::String(other.render()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: ExperimentConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Experiment-specific aggregates and verdicts, keyed by name.
    pub summary: Map<String, Value>,
    pub per_trial: Option<Value>,
}

impl Report {
    pub fn new(config: &ExperimentConfig, columns: Vec<&'static str>) -> Self {
        Self { config: config.clone(), columns, rows: Vec::new(), summary: Map::new(), per_trial: None }
    }

    pub fn schema(&self) -> &'static str {
        self.config.kind.schema()
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("summary values serialize");
        self.summary.insert(key.to_string(), v);
    }

    /// Cell by column name.
    pub fn cell(&self, row: usize, column: &str) -> Option<&Cell> {
        let k = self.columns.iter().position(|c| *c == column)?;
        self.rows.get(row).map(|r| &r[k])
    }

    pub fn number(&self, row: usize, column: &str) -> Option<f64> {
        match self.cell(row, column)? {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema={} kind={} seed={}", self.schema(), self.config.kind.name(), self.config.master_seed);
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

struct Rows<'a>(&'a Report);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let objects: Vec<Map<String, Value>> = self
            .0
            .rows
            .iter()
            .map(|row| self.0.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.to_json())).collect())
            .collect();
        objects.serialize(s)
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("schema", self.schema())?;
        m.serialize_entry("config", &self.config)?;
        m.serialize_entry("columns", &self.columns)?;
        m.serialize_entry("rows", &Rows(self))?;
        m.serialize_entry("summary", &self.summary)?;
        if let Some(p) = &self.per_trial {
            m.serialize_entry("per_trial", p)?;
        }
        m.end()
    }
}

/// Pieces of a JSON report needed to replay it.
pub struct ParsedReport {
    pub config: ExperimentConfig,
    pub per_trial: Option<Value>,
    pub document: Value,
}

pub fn parse_json_report(text: &str) -> Result<ParsedReport> {
    let document: Value = serde_json::from_str(text).map_err(|e| LabError::Report(e.to_string()))?;
    let config = document
        .get("config")
        .cloned()
        .ok_or_else(|| LabError::Report("missing config echo".into()))
        .and_then(|c| serde_json::from_value(c).map_err(|e| LabError::Report(format!("config echo: {e}"))))?;
    let per_trial = document.get("per_trial").cloned();
    Ok(ParsedReport { config, per_trial, document })
}
