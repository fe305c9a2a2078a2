//! Reports and their json, csv and text renderings.

use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Format, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(CliError::Usage(format!("unknown format {s:?}"))),
        }
    }
}

/// Rows exported by `--format csv`.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Table {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    fields: Map<String, Value>,
    /// The value `--expect` is compared against.
    pub verdict: Option<String>,
    table: Option<Table>,
    lines: Option<Vec<String>>,
    /// Forces exit status 1 regardless of `--expect`.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            fields: Map::new(),
            verdict: None,
            table: None,
            lines: None,
            failed: false,
        }
    }

    pub fn field(mut self, key: &str, value: impl Serialize) -> Result<Report, CliError> {
        self.fields
            .insert(key.to_string(), serde_json::to_value(value)?);
        Ok(self)
    }

    /// Copies every top-level field of a serializable struct.
    pub fn merge(mut self, value: impl Serialize) -> Result<Report, CliError> {
        match serde_json::to_value(value)? {
            Value::Object(m) => self.fields.extend(m),
            other => {
                self.fields.insert("value".into(), other);
            }
        }
        Ok(self)
    }

    pub fn verdict(mut self, v: impl Into<String>) -> Report {
        self.verdict = Some(v.into());
        self
    }

    pub fn table(mut self, t: Table) -> Report {
        self.table = Some(t);
        self
    }

    pub fn lines(mut self, lines: Vec<String>) -> Report {
        self.lines = Some(lines);
        self
    }

    pub fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(format!("{}\n", serde_json::to_string(&self.json())?)),
            Format::Csv => self.render_csv(),
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.header)?;
                for r in &t.rows {
                    w.write_record(r)?;
                }
            }
            None => {
                w.write_record(self.fields.keys())?;
                w.write_record(self.fields.values().map(scalar))?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn render_text(&self) -> String {
        if let Some(lines) = &self.lines {
            return lines.iter().map(|l| format!("{l}\n")).collect();
        }
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", scalar(v)))
            .collect()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_carries_the_schema_version() {
        let r = Report::new("demo").field("sign", "-").unwrap();
        let out = r.render(Format::Json).unwrap();
        assert_eq!(
            out,
            "{\"command\":\"demo\",\"schema_version\":1,\"sign\":\"-\"}\n"
        );
    }

    #[test]
    fn csv_falls_back_to_one_row() {
        let r = Report::new("demo")
            .field("a", 1)
            .unwrap()
            .field("b", "x,y")
            .unwrap();
        assert_eq!(r.render(Format::Csv).unwrap(), "a,b\n1,\"x,y\"\n");
    }
}
