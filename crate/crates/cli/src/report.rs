use std::fmt::Display;
use std::time::Duration;

use polarfloer_core::coeff_algebra::Ring;
use polarfloer_core::complexes::{GradedWindowReport, ModuleReport};
use serde_json::{json, Map, Value};

use crate::schema::to_text;

/// Human lines, then `---`, then one JSON document with the same facts.
#[derive(Debug)]
pub struct Report {
    command: String,
    kind: String,
    lines: Vec<String>,
    details: Vec<String>,
    machine: Map<String, Value>,
    failed: bool,
}

impl Report {
    pub fn new(command: &str, kind: &str) -> Self {
        Report {
            command: command.to_string(),
            kind: kind.to_string(),
            lines: Vec::new(),
            details: Vec::new(),
            machine: Map::new(),
            failed: false,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Shown only in verbose mode.
    pub fn detail(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.machine.insert(key.to_string(), v.into());
    }

    /// Records a verdict; a false one makes the run a validation failure.
    pub fn verdict(&mut self, key: &str, holds: bool) {
        self.line(format!("{key}: {}", if holds { "yes" } else { "NO" }));
        self.set(key, holds);
        self.failed |= !holds;
    }

    pub fn fail(&mut self) {
        self.failed = true;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn render(&self, verbosity: u8, elapsed: Duration) -> String {
        let mut out = format!("polarfloer {} ({} dataset)\n", self.command, self.kind);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if verbosity > 0 {
            for l in &self.details {
                out.push_str("  ");
                out.push_str(l);
                out.push('\n');
            }
            out.push_str(&format!("elapsed: {:.3} ms\n", elapsed.as_secs_f64() * 1e3));
        }
        out.push_str(&format!("status: {}\n---\n", if self.failed { "FAILED" } else { "ok" }));
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command.as_str()));
        doc.insert("kind".into(), Value::from(self.kind.as_str()));
        doc.insert("ok".into(), Value::from(!self.failed));
        doc.extend(self.machine.clone());
        out.push_str(&to_text(&Value::Object(doc)));
        out.push('\n');
        out
    }
}

pub fn module<R: Ring>(m: &ModuleReport<R>) -> Value {
    json!({
        "free_rank": m.free_rank,
        "torsion": m.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "text": m.to_string(),
    })
}

pub fn bars(b: &GradedWindowReport) -> Value {
    let (up, down, both, finite) = b.signature();
    json!({
        "pattern": b.pattern(),
        "up_open": up,
        "down_open": down,
        "both_open": both,
        "finite": finite,
        "localized_rank": b.localized_rank(),
    })
}

pub fn dims(d: &[(i64, usize)]) -> Value {
    Value::Array(d.iter().map(|(k, n)| json!([k, n])).collect())
}

pub fn dims_text(d: &[(i64, usize)]) -> String {
    let parts: Vec<String> = d.iter().filter(|(_, n)| *n > 0).map(|(k, n)| format!("{k}:{n}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

pub fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}
