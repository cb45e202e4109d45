//! Command output: ordered `key: value` lines, or one JSON object.

use raydiag::scalar::mixed;
use raydiag::Rational;
use serde_json::{json, Map, Value};

/// Exact rational as a JSON string (`"7/2"`).
pub fn qjson(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn qvec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(qjson).collect())
}

pub fn qvec_human(v: &[Rational]) -> String {
    v.iter().map(mixed).collect::<Vec<_>>().join(" ")
}

pub fn sets_human(sets: &[Vec<usize>]) -> String {
    if sets.is_empty() {
        return "none".into();
    }
    sets.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(" ")
}

/// Result of one command.
pub struct Report {
    command: String,
    lines: Vec<(String, String, Value)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), lines: vec![] }
    }

    /// Add a field with separate human and JSON renderings.
    pub fn put(&mut self, key: impl Into<String>, human: impl Into<String>, value: Value) {
        self.lines.push((key.into(), human.into(), value));
    }

    /// Add a field whose human rendering is its plain text.
    pub fn text(&mut self, key: impl Into<String>, value: impl ToString) {
        let s = value.to_string();
        self.put(key, s.clone(), Value::String(s));
    }

    pub fn int(&mut self, key: impl Into<String>, value: i64) {
        self.put(key, value.to_string(), json!(value));
    }

    pub fn flag(&mut self, key: impl Into<String>, value: bool) {
        self.put(key, value.to_string(), json!(value));
    }

    pub fn q(&mut self, key: impl Into<String>, value: &Rational) {
        self.put(key, mixed(value), qjson(value));
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut body = Map::new();
            for (k, _, v) in &self.lines {
                // repeated keys collect into an array
                match body.get_mut(k) {
                    Some(Value::Array(a)) if k.ends_with("[]") => a.push(v.clone()),
                    _ => {
                        body.insert(k.clone(), if k.ends_with("[]") { json!([v]) } else { v.clone() });
                    }
                }
            }
            let out = json!({ "command": self.command, "result": body });
            serde_json::to_string_pretty(&out).expect("report serializes") + "\n"
        } else {
            let mut s = format!("command: {}\n", self.command);
            for (k, h, _) in &self.lines {
                s.push_str(&format!("{}: {h}\n", k.trim_end_matches("[]")));
            }
            s
        }
    }
}
