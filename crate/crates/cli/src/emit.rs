//! Report emitters. Every command produces a list of flat rows plus a few
//! metadata pairs, written as CSV, JSON or aligned text.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Metadata echoed ahead of the rows, in insertion order.
#[derive(Debug, Default, Clone)]
pub struct Meta(Vec<(String, serde_json::Value)>);

impl Meta {
    pub fn new() -> Self {
        Meta::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    fn json(&self) -> serde_json::Map<String, serde_json::Value> {
        self.0.iter().cloned().collect()
    }

    fn comment_lines(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("# {k}: {s}\n"),
                other => format!("# {k}: {other}\n"),
            })
            .collect()
    }
}

/// CSV with `#` metadata lines, JSON as `{"meta": …, "rows": […]}`, or text
/// as metadata lines followed by space-aligned columns.
pub fn rows<T: Serialize>(format: Format, meta: &Meta, rows: &[T]) -> Result<String, String> {
    match format {
        Format::Json => {
            let doc = serde_json::json!({ "meta": meta.json(), "rows": rows });
            serde_json::to_string_pretty(&doc).map(|s| s + "\n").map_err(|e| e.to_string())
        }
        Format::Csv => Ok(meta.comment_lines() + &csv_body(rows)?),
        Format::Text => {
            let body = csv_body(rows)?;
            let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(body.as_bytes());
            let table: Vec<Vec<String>> = rdr
                .records()
                .map(|r| r.map(|r| r.iter().map(str::to_string).collect()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            Ok(meta.comment_lines() + &aligned(&table))
        }
    }
}

fn csv_body<T: Serialize>(rows: &[T]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn aligned(table: &[Vec<String>]) -> String {
    let cols = table.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|c| table.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in table {
        let line: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = width[c])).collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}
