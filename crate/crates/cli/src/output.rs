use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{Map, Value};

use drd_core::Rational;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub enum Cell {
    Text(String),
    Exact(Rational),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Text(v.to_string())
    }
}

pub struct Output {
    pub format: Format,
    pub path: Option<PathBuf>,
    pub decimal: Option<usize>,
}

impl Output {
    pub fn json(&self, value: &Value) -> std::io::Result<()> {
        let mut value = value.clone();
        if let Some(digits) = self.decimal {
            add_decimals(&mut value, digits);
        }
        let mut text = serde_json::to_string(&value).expect("reports serialize");
        text.push('\n');
        self.write(text.as_bytes())
    }

    /// Exact cells gain a `<column>_decimal` neighbour when decimals are on.
    pub fn csv(&self, header: &[&str], rows: &[Vec<Cell>]) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let exact_columns: Vec<bool> = (0..header.len())
            .map(|i| rows.iter().any(|r| matches!(r[i], Cell::Exact(_))))
            .collect();
        let mut head = Vec::new();
        for (i, h) in header.iter().enumerate() {
            head.push(h.to_string());
            if self.decimal.is_some() && exact_columns[i] {
                head.push(format!("{h}_decimal"));
            }
        }
        w.write_record(&head)?;
        for row in rows {
            let mut record = Vec::new();
            for (i, cell) in row.iter().enumerate() {
                match cell {
                    Cell::Text(t) => record.push(t.clone()),
                    Cell::Exact(r) => record.push(r.to_string()),
                }
                if let (Some(digits), true) = (self.decimal, exact_columns[i]) {
                    record.push(match cell {
                        Cell::Exact(r) => r.to_decimal(digits),
                        Cell::Text(_) => String::new(),
                    });
                }
            }
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        self.write(&bytes)
    }

    fn write(&self, bytes: &[u8]) -> std::io::Result<()> {
        match &self.path {
            Some(path) => fs::write(path, bytes),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(bytes)?;
                stdout.flush()
            }
        }
    }
}

/// Every string field holding an exact rational gets a `<key>_decimal`
/// sibling.
fn add_decimals(value: &mut Value, digits: usize) {
    match value {
        Value::Object(map) => {
            let mut extra = Map::new();
            for (key, v) in map.iter_mut() {
                if let Value::String(s) = v {
                    if let Ok(r) = s.parse::<Rational>() {
                        extra.insert(
                            format!("{key}_decimal"),
                            Value::String(r.to_decimal(digits)),
                        );
                    }
                } else {
                    add_decimals(v, digits);
                }
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(|v| add_decimals(v, digits)),
        _ => {}
    }
}
