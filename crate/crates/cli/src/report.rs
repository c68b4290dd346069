//! Run reports and their JSON-lines / CSV rendering.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

/// Everything needed to reproduce a run, plus its results.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Vec<Value>,
    pub seed: u64,
    pub wall_time: f64,
    pub version: String,
    /// `met`, `violated` or `error`.
    pub status: String,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Vec::new(),
            seed,
            wall_time: 0.0,
            version: env!("CARGO_PKG_VERSION").to_string(),
            status: "met".to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable input"),
        );
        self
    }

    pub fn output(&mut self, record: Value) {
        self.outputs.push(record);
    }
}

/// The whole report as a single JSON line.
pub fn write_jsonl<W: Write>(out: &mut W, report: &RunReport) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, report)?;
    writeln!(out)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One row per output record. Columns are the run metadata followed by the
/// union of record keys; nested values are written as JSON.
pub fn write_csv<W: Write>(out: W, report: &RunReport) -> csv::Result<()> {
    let mut keys: Vec<String> = Vec::new();
    for rec in &report.outputs {
        if let Value::Object(m) = rec {
            for k in m.keys() {
                if !keys.contains(k) {
                    keys.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["command".to_string(), "seed".to_string(), "status".to_string()];
    header.extend(keys.iter().cloned());
    w.write_record(&header)?;
    for rec in &report.outputs {
        let mut row = vec![report.command.clone(), report.seed.to_string(), report.status.clone()];
        row.extend(keys.iter().map(|k| rec.get(k).map(cell).unwrap_or_default()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
