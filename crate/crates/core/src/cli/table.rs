//! Tabular command output as CSV or JSON.

use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            // shortest round-trip representation, always with '.'
            Cell::Num(v) => write!(f, "{v:?}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
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
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of one column; text cells are skipped.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().filter_map(|r| r[i].as_f64()).collect())
    }
}

/// JSON output document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonOutput {
    pub command: String,
    pub config_echo: serde_json::Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn write_csv<W: Write>(writer: W, table: &Table) -> Result<()> {
    let mut w = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::Necessary).from_writer(writer);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|c| c.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(
    mut writer: W,
    command: &str,
    config_echo: &serde_json::Value,
    table: &Table,
) -> Result<()> {
    let doc = JsonOutput {
        command: command.to_string(),
        config_echo: config_echo.clone(),
        columns: table.columns.clone(),
        rows: table.rows.clone(),
    };
    serde_json::to_writer_pretty(&mut writer, &doc)?;
    writeln!(writer)?;
    Ok(())
}

/// Renders the table into memory in the requested format.
pub fn render(format: Format, command: &str, config_echo: &serde_json::Value, table: &Table) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(&mut buf, table)?,
        Format::Json => write_json(&mut buf, command, config_echo, table)?,
    }
    Ok(buf)
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Parses CSV produced by [`write_csv`] back into a table. Cells that parse
/// as integers or floats come back numeric.
pub fn read_csv(text: &str) -> Result<Table> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let columns = rdr.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        rows.push(
            rec.iter()
                .map(|s| {
                    if let Ok(i) = s.parse::<i64>() {
                        Cell::Int(i)
                    } else if let Ok(v) = s.parse::<f64>() {
                        Cell::Num(v)
                    } else {
                        Cell::Text(s.to_string())
                    }
                })
                .collect(),
        );
    }
    Ok(Table { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let mut t = Table::new(&["n", "x", "label"]);
        t.push(vec![Cell::from(3u32), Cell::from(0.1 + 0.2), Cell::from("a,b")]);
        t.push(vec![Cell::from(4u32), Cell::from(1e-300), Cell::from("plain")]);
        t.push(vec![Cell::from(5u32), Cell::from(2.0), Cell::from("quote\"d")]);
        let mut buf = Vec::new();
        write_csv(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,x,label\n"));
        assert!(text.contains("\"a,b\""));
        assert!(text.contains("2.0"));
        let back = read_csv(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_document_shape() {
        let mut t = Table::new(&["a"]);
        t.push(vec![Cell::from(1.5)]);
        let bytes = render(Format::Json, "ladder", &serde_json::json!({"n_max": 2}), &t).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(doc["command"], "ladder");
        assert_eq!(doc["columns"][0], "a");
        assert_eq!(doc["rows"][0][0], 1.5);
        assert_eq!(doc["config_echo"]["n_max"], 2);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomically(&path, b"first").unwrap();
        write_atomically(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
