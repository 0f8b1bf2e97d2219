//! Input files and the error type that maps onto exit codes.

use std::fmt;
use std::path::Path;

use ramsey_forge::{Error as CoreError, Graph, ThreeGraph};
use serde::de::DeserializeOwned;
use serde_json::Value;

#[derive(Debug)]
pub enum CliError {
    /// Bad input, unreadable file or exceeded search limit: exit 2.
    Usage(String),
    /// A checked property failed: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CandidateUnderflow { .. }
            | CoreError::ConstructionFailed { .. }
            | CoreError::NotTriangleFree => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Byte offset of a 1-based line and column.
pub fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn json_error(path: &Path, text: &str, e: serde_json::Error) -> CliError {
    let what = if e.is_data() {
        "invalid content"
    } else {
        "malformed JSON"
    };
    CliError::Usage(format!(
        "{}: {what} at byte {}: {e}",
        path.display(),
        byte_offset(text, e.line(), e.column())
    ))
}

pub fn read_value(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| json_error(path, &text, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| json_error(path, &text, e))
}

/// Finds the object carrying `marker`, looking through report wrappers
/// (`result`) and the named fields.
fn locate<'a>(v: &'a Value, marker: &str, fields: &[&str]) -> Option<&'a Value> {
    if v.get(marker).is_some() {
        return Some(v);
    }
    ["result"]
        .iter()
        .chain(fields)
        .filter_map(|k| v.get(k))
        .find_map(|inner| locate(inner, marker, fields))
}

fn read_embedded<T: DeserializeOwned>(path: &Path, marker: &str, fields: &[&str], what: &str) -> CliResult<T> {
    let v = read_value(path)?;
    let inner =
        locate(&v, marker, fields).ok_or_else(|| CliError::Usage(format!("{}: no {what} found", path.display())))?;
    serde_json::from_value(inner.clone())
        .map_err(|e| CliError::Usage(format!("{}: invalid {what}: {e}", path.display())))
}

/// A graph file, or any report embedding one under `graph` or `palette`.
pub fn read_graph(path: &Path) -> CliResult<Graph> {
    read_embedded(path, "edges", &["graph", "palette"], "graph")
}

/// A 3-graph file, or any report embedding one under `gamma` or `host`.
pub fn read_three_graph(path: &Path) -> CliResult<ThreeGraph> {
    read_embedded(path, "triples", &["gamma", "host"], "3-graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_count_bytes() {
        let text = "{\n  \"n\": 3,\n  x\n}";
        assert_eq!(byte_offset(text, 1, 1), 0);
        assert_eq!(byte_offset(text, 3, 3), 14);
        assert_eq!(&text[14..15], "x");
        let e = serde_json::from_str::<Value>(text).unwrap_err();
        assert_eq!(byte_offset(text, e.line(), e.column()), 14);
    }

    #[test]
    fn locates_nested_graphs() {
        let v: Value = serde_json::json!({"result": {"graph": {"n": 2, "edges": [[0, 1]]}}});
        assert_eq!(locate(&v, "edges", &["graph"]).unwrap()["n"], 2);
        assert!(locate(&v, "triples", &["gamma"]).is_none());
    }
}
