use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One checked claim. `paper_ref` names the operation whose output decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub paper_ref: String,
    pub pass: bool,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, operation: &str, pass: bool) -> Self {
        Self {
            claim: claim.into(),
            paper_ref: operation.to_string(),
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    /// Aligned two-column text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let inputs = flatten(&self.inputs);
        let results = flatten(&self.results);
        let width = inputs
            .iter()
            .chain(&results)
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0);
        for (k, v) in inputs {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        if !results.is_empty() {
            let _ = writeln!(out);
        }
        for (k, v) in results {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out);
            let cw = self.verdicts.iter().map(|v| v.claim.len()).max().unwrap_or(0);
            for v in &self.verdicts {
                let tag = if v.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {tag}  {:<cw$}  [{}]", v.claim, v.paper_ref);
            }
        }
        let _ = writeln!(out, "  ({} ms)", self.elapsed_ms);
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) if items.is_empty() => "[]".to_string(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        Value::Array(items) => format!("<{} entries>", items.len()),
        Value::Object(map) => {
            let fields: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect();
            fields.join(" ")
        }
        other => other.to_string(),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(_) => format!("{{{}}}", scalar(v)),
        Value::Array(items) if !items.is_empty() && items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("[{}]", scalar(v))
        }
        _ => scalar(v),
    }
}

/// Rows for the text table. Nested objects expand to dotted keys and
/// arrays of objects to one row per entry.
fn flatten(v: &Value) -> Vec<(String, String)> {
    let Value::Object(map) = v else {
        return vec![("value".to_string(), scalar(v))];
    };
    let mut rows = Vec::new();
    for (k, v) in map {
        match v {
            Value::Object(inner) if inner.values().all(|x| !x.is_object()) => {
                for (ik, iv) in inner {
                    rows.push((format!("{k}.{ik}"), scalar(iv)));
                }
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                for (i, item) in items.iter().enumerate() {
                    rows.push((format!("{k}[{i}]"), scalar(item)));
                }
            }
            _ => rows.push((k.clone(), scalar(v))),
        }
    }
    rows
}
