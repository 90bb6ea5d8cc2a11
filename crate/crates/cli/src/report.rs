use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub module: String,
    pub op: String,
    pub config: Value,
}

/// Machine-readable outcome of one command. Maps are ordered so that the
/// serialised form is stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub metrics: BTreeMap<String, f64>,
    /// Exact values rendered as strings, or arrays of such strings.
    pub certificates: BTreeMap<String, Value>,
    /// Numeric arrays: profiles, matrices, residual sequences.
    pub arrays: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(command: &str, module: &str, op: &str, config: &RunConfig) -> Self {
        Self {
            command: command.to_string(),
            pass: true,
            metrics: BTreeMap::new(),
            certificates: BTreeMap::new(),
            arrays: BTreeMap::new(),
            children: Vec::new(),
            provenance: Provenance {
                module: module.to_string(),
                op: op.to_string(),
                config: config.echo(),
            },
        }
    }

    pub fn metric(&mut self, name: &str, value: f64) -> &mut Self {
        self.metrics.insert(name.to_string(), value);
        self
    }

    pub fn cert(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.certificates.insert(name.to_string(), value.into());
        self
    }

    pub fn array(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.arrays.insert(name.to_string(), value.into());
        self
    }

    /// Records a named requirement; the report fails if any requirement fails.
    pub fn require(&mut self, name: &str, holds: bool) -> &mut Self {
        self.certificates.insert(format!("check.{name}"), Value::Bool(holds));
        self.pass &= holds;
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let out = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        out.expect("reports serialise")
    }

    /// A few lines for terminals.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        self.summarise(&mut s, 0);
        s
    }

    fn summarise(&self, s: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{pad}{verdict} {}", self.command);
        for (k, v) in &self.metrics {
            let _ = writeln!(s, "{pad}  {k} = {v:.6e}");
        }
        for (k, v) in &self.certificates {
            match v {
                Value::String(text) => {
                    let _ = writeln!(s, "{pad}  {k}: {text}");
                }
                Value::Array(items) if items.len() <= 12 => {
                    let _ = writeln!(s, "{pad}  {k}: {}", Value::Array(items.clone()));
                }
                Value::Array(items) => {
                    let _ = writeln!(s, "{pad}  {k}: [{} entries]", items.len());
                }
                other => {
                    let _ = writeln!(s, "{pad}  {k}: {other}");
                }
            }
        }
        for child in &self.children {
            child.summarise(s, depth + 1);
        }
    }
}
