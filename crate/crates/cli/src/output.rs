//! JSON and CSV rendering. Reals are written as decimal strings (shortest
//! round-trip form) so that output is byte-reproducible.

use clap::ValueEnum;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn real(x: f64) -> Value {
    // fold -0 into 0
    let x = if x == 0.0 { 0.0 } else { x };
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        Value::String(format!("{x:e}"))
    } else {
        Value::String(format!("{x}"))
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": real(z.re), "im": real(z.im) })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(o) => {
            for (k, inner) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, inner, out);
            }
        }
        other => {
            let key = if prefix.is_empty() { "value".to_string() } else { prefix.to_string() };
            out.insert(key, other.clone());
        }
    }
}

fn csv_rows(value: &Value) -> Vec<Map<String, Value>> {
    let as_row = |v: &Value| {
        let mut row = Map::new();
        flatten("", v, &mut row);
        row
    };
    match value {
        Value::Object(o) => match o.get("rows") {
            Some(Value::Array(rows)) => rows.iter().map(as_row).collect(),
            _ => vec![as_row(value)],
        },
        Value::Array(rows) => rows.iter().map(as_row).collect(),
        other => vec![as_row(other)],
    }
}

/// Renders a report. CSV takes the `rows` array when present, otherwise the
/// top-level fields as a single row; nested objects become dotted columns
/// and arrays become JSON text.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => value.to_string(),
        Format::Csv => {
            let rows = csv_rows(value);
            let mut header: Vec<String> = Vec::new();
            for row in &rows {
                for k in row.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory write");
            for row in &rows {
                w.write_record(header.iter().map(|k| row.get(k).map(cell).unwrap_or_default()))
                    .expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory write");
            String::from_utf8(bytes).expect("csv output is UTF-8").trim_end().to_string()
        }
    }
}
