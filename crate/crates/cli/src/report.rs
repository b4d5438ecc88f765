//! Versioned reports. The payload is a pure function of the configuration;
//! timing and cache statistics are kept outside it.

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "rgc-report/1";

/// A flat table, also used for CSV output.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Default)]
pub struct Payload {
    pub tables: Vec<Table>,
    pub extra: serde_json::Map<String, Value>,
}

pub struct Report {
    pub command: Vec<String>,
    pub payload: Payload,
    pub elapsed_ms: u128,
    pub cache_hits: usize,
    pub cache_misses: usize,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut payload = self.payload.extra.clone();
        payload.insert("tables".into(), serde_json::to_value(&self.payload.tables).expect("tables serialize"));
        let v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "payload": payload,
            "run": { "elapsed_ms": self.elapsed_ms, "cache_hits": self.cache_hits, "cache_misses": self.cache_misses },
        });
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.payload.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# {}\n", t.name));
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for r in &t.rows {
                let cells: Vec<String> = r.iter().map(csv_cell).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}
