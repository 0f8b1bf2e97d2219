//! Run reports and their JSON and CSV renderings.

use std::io::Write;
use std::path::Path;

use ramsey_forge::SearchLimits;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::io::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Exhaustive,
    Sampled,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a subcommand produced, before the run metadata is attached.
pub struct Outcome {
    pub result: Value,
    pub verification: Verification,
    /// False when a checked property failed.
    pub certified: bool,
    /// CSV rows; the whole result when empty.
    pub rows: Vec<Value>,
    /// Seed actually used, when it did not come from the flags.
    pub seed: Option<u64>,
}

impl Outcome {
    pub fn new(result: impl Serialize, verification: Verification, certified: bool) -> Self {
        Outcome {
            result: serde_json::to_value(result).expect("results serialise"),
            verification,
            certified,
            rows: Vec::new(),
            seed: None,
        }
    }

    pub fn with_rows<T: Serialize>(mut self, rows: impl IntoIterator<Item = T>) -> Self {
        self.rows = rows
            .into_iter()
            .map(|r| serde_json::to_value(r).expect("rows serialise"))
            .collect();
        self
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub limits: SearchLimits,
    pub verification: Verification,
    pub certified: bool,
    pub elapsed_ms: u128,
    pub result: &'a Value,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&key(k), inner, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        _ => out.push((prefix.to_string(), v.to_string())),
    }
}

/// One CSV row per entry of `rows`, columns in order of first appearance.
pub fn to_csv(report: &RunReport, rows: &[Value]) -> CliResult<Vec<u8>> {
    let single = [report.result.clone()];
    let rows = if rows.is_empty() { &single[..] } else { rows };
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut out = vec![
                ("command".to_string(), report.command.to_string()),
                ("seed".to_string(), report.seed.to_string()),
                ("certified".to_string(), report.certified.to_string()),
            ];
            let r = match r {
                Value::Object(_) => r.clone(),
                other => Value::Object(Map::from_iter([("value".to_string(), other.clone())])),
            };
            flatten("", &r, &mut out);
            out
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for (k, _) in flat.iter().flatten() {
        if !header.contains(k) {
            header.push(k.clone());
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for row in &flat {
        let record = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()));
        w.write_record(record).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))
}

pub fn emit(report: &RunReport, rows: &[Value], format: Format, out: Option<&Path>) -> CliResult<()> {
    let bytes = match format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(report).expect("reports serialise");
            b.push(b'\n');
            b
        }
        Format::Csv => to_csv(report, rows)?,
    };
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Usage(format!("stdout: {e}"))),
    }
}
