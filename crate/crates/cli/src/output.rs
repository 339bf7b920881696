//! One result shape rendered three ways.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Named fields plus an optional table.
#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
    table: Option<Table>,
    /// Printed as-is in text mode instead of the field list.
    text: Option<String>,
}

#[derive(Debug)]
struct Table {
    key: String,
    header: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    /// Rows are emitted under `key` in JSON and as the body of the CSV.
    pub fn table(mut self, key: &str, header: &[&str], rows: Vec<Vec<Value>>) -> Self {
        self.table = Some(Table { key: key.to_string(), header: header.iter().map(|h| h.to_string()).collect(), rows });
        self
    }

    pub fn text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        let mut obj = Map::new();
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        if let Some(t) = &self.table {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.header.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            obj.insert(t.key.clone(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
        s.push('\n');
        s
    }

    fn render_text(&self) -> String {
        if let Some(text) = &self.text {
            let mut s = text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            return s;
        }
        let mut s = String::new();
        for (k, v) in &self.fields {
            writeln!(s, "{k}: {}", plain(v)).expect("writing to a string");
        }
        if let Some(t) = &self.table {
            writeln!(s, "{}", t.header.join("\t")).expect("writing to a string");
            for r in &t.rows {
                writeln!(s, "{}", r.iter().map(plain).collect::<Vec<_>>().join("\t")).expect("writing to a string");
            }
        }
        s
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.header).expect("in-memory csv");
                for r in &t.rows {
                    w.write_record(r.iter().map(plain)).expect("in-memory csv");
                }
            }
            None => {
                w.write_record(["key", "value"]).expect("in-memory csv");
                for (k, v) in &self.fields {
                    w.write_record([k.as_str(), plain(v).as_str()]).expect("in-memory csv");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 input")
    }
}

/// Strings without quotes, everything else as compact JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        other => other.to_string(),
    }
}
