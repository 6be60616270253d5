use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Structured output of one invocation. Keys serialize in sorted order, so
/// the JSON rendering is byte-stable.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    /// Canonical form of the group spec.
    pub spec: String,
    pub sections: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, spec: &str) -> Self {
        Report {
            command: command.to_string(),
            spec: spec.to_string(),
            sections: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn section(&mut self, key: &str, value: Value) -> &mut Self {
        self.sections.insert(key.to_string(), value);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "spec": self.spec,
            "sections": Value::Object(self.sections.clone()),
            "warnings": self.warnings,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report is valid JSON");
        s.push('\n');
        s
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.command, self.spec).unwrap();
        for (key, value) in &self.sections {
            match (key.as_str(), value) {
                ("checks", Value::Array(items)) => render_checks(&mut out, items),
                (_, Value::Array(items))
                    if items.iter().all(is_flat_object) && !items.is_empty() =>
                {
                    writeln!(out, "  {key}:").unwrap();
                    for item in items {
                        let cells: Vec<String> = item
                            .as_object()
                            .unwrap()
                            .iter()
                            .map(|(k, v)| format!("{k}={}", scalar(v).unwrap()))
                            .collect();
                        writeln!(out, "    {}", cells.join("  ")).unwrap();
                    }
                }
                _ => render_value(&mut out, key, value, 1),
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn is_flat_object(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|m| m.values().all(|x| scalar(x).is_some()))
}

fn render_checks(out: &mut String, items: &[Value]) {
    writeln!(out, "  checks:").unwrap();
    let width = items
        .iter()
        .filter_map(|i| i["name"].as_str())
        .map(str::len)
        .max()
        .unwrap_or(0);
    for item in items {
        let status = item["status"].as_str().unwrap_or("?").to_uppercase();
        let name = item["name"].as_str().unwrap_or("?");
        let detail = item["detail"].as_str().unwrap_or("");
        writeln!(out, "    [{status:<4}] {name:<width$}  {detail}").unwrap();
    }
}

fn render_value(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(value) {
        writeln!(out, "{pad}{key}: {s}").unwrap();
        return;
    }
    writeln!(out, "{pad}{key}:").unwrap();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                render_value(out, k, v, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                render_value(out, &format!("[{i}]"), v, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Integers go out as JSON numbers when they fit in an `i64`, else as
/// decimal strings.
pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

/// Rationals are written `p` or `p/q`.
pub fn rational_value(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(&x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn matrix_value(rows: Vec<Vec<BigInt>>) -> Value {
    Value::Array(rows.iter().map(|r| ints_value(r)).collect())
}
