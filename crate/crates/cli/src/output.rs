//! Deterministic table output: CSV with fixed 17-significant-digit floats
//! and `\n` line endings, or a JSON array of row objects.

use crate::config::{OutputFormat, Settings};

/// 17 significant digits, locale-independent, round-trips any f64.
pub fn fmt(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            OutputFormat::Json => {
                let items: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let map: serde_json::Map<String, serde_json::Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, v)| (h.to_string(), serde_json::Value::String(v.clone())))
                            .collect();
                        serde_json::Value::Object(map)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&items).expect("table serialization");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes the rendered table to `--out` when given, otherwise to stdout.
pub fn deliver(settings: &Settings, table: &Table) -> std::io::Result<()> {
    deliver_text(settings, &table.render(settings.format))
}

/// Writes pre-rendered text (JSON reports) to `--out` or stdout.
pub fn deliver_text(settings: &Settings, text: &str) -> std::io::Result<()> {
    match &settings.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
