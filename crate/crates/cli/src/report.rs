//! Row-based report emission: one table per invocation, rendered as JSON,
//! CSV or a markdown table. Output is deterministic for identical rows.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Ordered (column, value) pairs; all rows of a report share the columns.
pub type Row = Vec<(String, Value)>;

pub fn row(pairs: &[(&str, Value)]) -> Row {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit(rows: &[Row], format: Format) -> String {
    match format {
        Format::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut map = serde_json::Map::new();
                    for (k, v) in r {
                        map.insert(k.clone(), v.clone());
                    }
                    Value::Object(map)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&objs).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let header: Vec<String> =
                    first.iter().map(|(k, _)| csv_escape(k)).collect();
                out.push_str(&header.join(","));
                out.push('\n');
            }
            for r in rows {
                let line: Vec<String> = r.iter().map(|(_, v)| csv_escape(&cell(v))).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        Format::Markdown => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let cols: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
                out.push_str(&format!("| {} |\n", cols.join(" | ")));
                out.push_str(&format!(
                    "|{}\n",
                    cols.iter().map(|_| " --- |").collect::<String>()
                ));
            }
            for r in rows {
                let cells: Vec<String> =
                    r.iter().map(|(_, v)| cell(v).replace('|', "\\|")).collect();
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            out
        }
    }
}
