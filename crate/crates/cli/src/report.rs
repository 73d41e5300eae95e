//! Command reports: a plain-text rendering for people and a JSON document
//! whose numbers are all strings.

use std::collections::BTreeMap;

use apery::arith::BigFloat;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Fields are declared in key order so that the struct and a generic JSON
/// value serialize identically.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub diagnostics: BTreeMap<String, Value>,
    pub inputs: BTreeMap<String, String>,
    pub results: BTreeMap<String, Value>,
    pub version: String,
    #[serde(skip)]
    pub text: Vec<String>,
    /// Set when the report is complete but records a failed check.
    #[serde(skip)]
    pub failure: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), version: env!("CARGO_PKG_VERSION").into(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.into(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("string-keyed maps serialize") + "\n"
    }

    pub fn from_json(json: &str) -> serde_json::Result<Self> {
        serde_json::from_str(json)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.text.join("\n");
        out.push('\n');
        out
    }
}

pub fn string(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(string).collect())
}

pub fn object<K: Into<String>>(pairs: impl IntoIterator<Item = (K, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
}

/// Three significant digits in scientific notation, without the `f64`
/// exponent range limit.
pub fn scientific(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let l = x.log10_abs();
    let mut e = l.floor();
    let mut m = 10f64.powf(l - e);
    if m >= 9.995 {
        m /= 10.0;
        e += 1.0;
    }
    let sign = if x.signum() < 0 { "-" } else { "" };
    format!("{sign}{m:.2}e{e}")
}
