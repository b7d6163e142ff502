//! One result, three renderings.

use std::fmt::Write;

use serde_json::Value;

use crate::Format;

/// A command result: the JSON document, CSV tables and a human-readable text.
pub struct Output {
    pub json: Value,
    /// Each table is a header row followed by data rows; tables are separated by a blank line.
    pub csv: Vec<Vec<Vec<String>>>,
    pub pretty: String,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let tables: Vec<String> = self.csv.iter().map(|t| t.iter().map(|r| csv_row(r)).collect::<String>()).collect();
                tables.join("\n")
            }
            Format::Pretty => self.pretty.clone(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(r: &[String]) -> String {
    let mut line = r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// A right-aligned grid: `header` over `rows`, first column left-aligned.
pub fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (k, cell) in r.iter().enumerate() {
            width[k] = width[k].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (k, cell) in r.iter().enumerate() {
            if k == 0 {
                let _ = write!(out, "{cell:<w$}", w = width[0]);
            } else {
                let _ = write!(out, " {cell:>w$}", w = width[k]);
            }
        }
        out.push('\n');
    }
    out
}

pub fn strings<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}
