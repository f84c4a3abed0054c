use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::failure::Failure;

/// What one command prints.
///
/// Every numeric claim in `results` has its certificate under `witnesses`, or
/// is the string `"unknown"` with the limit listed in `limit_hits`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Value,
    pub witnesses: Value,
    pub limit_hits: Vec<String>,
    pub elapsed_ms: u128,
    /// sha256 of the report with `elapsed_ms` and `digest` removed.
    pub digest: String,
}

/// Results of a command before the report is assembled.
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    pub limit_hits: Vec<String>,
    /// Exit status other than success, decided by the command itself.
    pub status: Option<Failure>,
}

impl Outcome {
    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), to_value(value));
        self
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.witnesses.insert(key.into(), to_value(value));
        self
    }

    /// Records a limit hit and stores `"unknown"` under `key`.
    pub fn unknown(&mut self, key: &str, reason: String) -> &mut Self {
        self.results.insert(key.into(), Value::String("unknown".into()));
        self.limit_hits.push(reason);
        self
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn digest_of(value: &Value) -> String {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("elapsed_ms");
                m.remove("digest");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v = value.clone();
    strip(&mut v);
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs: &[u8], outcome: Outcome, elapsed_ms: u128) -> Self {
        let mut r = RunReport {
            command,
            inputs_digest: hex::encode(Sha256::digest(inputs)),
            results: Value::Object(outcome.results),
            witnesses: Value::Object(outcome.witnesses),
            limit_hits: outcome.limit_hits,
            elapsed_ms,
            digest: String::new(),
        };
        r.digest = digest_of(&to_value(&r));
        r
    }

    pub fn render(&self, text: bool) -> String {
        if !text {
            return serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        }
        let mut out = format!("command: {}\n", self.command.join(" "));
        if let Value::Object(m) = &self.results {
            for (k, v) in m {
                out.push_str(&format!("{k}: {}\n", brief(v)));
            }
        }
        if let Value::Object(m) = &self.witnesses {
            if !m.is_empty() {
                let names: Vec<&str> = m.keys().map(String::as_str).collect();
                out.push_str(&format!("witnesses: {} (use --format json to see them)\n", names.join(", ")));
            }
        }
        for hit in &self.limit_hits {
            out.push_str(&format!("limit hit: {hit}\n"));
        }
        out.push_str(&format!("digest: {}\n", self.digest));
        out
    }
}

fn brief(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) | Value::Null => v.to_string(),
        _ => {
            let s = v.to_string();
            if s.chars().count() > 120 {
                format!("{}...", s.chars().take(117).collect::<String>())
            } else {
                s
            }
        }
    }
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("files serialize") + "\n";
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}
