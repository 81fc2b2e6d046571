use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Output of one command. Every format is rendered from the same values.
#[derive(Debug, Default)]
pub struct Report {
    pub q: Option<usize>,
    pub command: &'static str,
    pub results: Vec<Value>,
    pub totals: Map<String, Value>,
    pub timings: Map<String, Value>,
    /// CSV rows; `results` when empty.
    pub rows: Vec<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Report {
    pub fn new(q: Option<usize>, command: &'static str) -> Self {
        Report { q, command, ..Default::default() }
    }

    pub fn total(&mut self, key: &str, v: impl Into<Value>) {
        self.totals.insert(key.to_string(), v.into());
    }

    pub fn timing(&mut self, key: &str, secs: f64) {
        self.timings.insert(key.to_string(), Value::from((secs * 1e3).round() / 1e3));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = serde_json::json!({
                    "q": self.q,
                    "command": self.command,
                    "results": self.results,
                    "totals": self.totals,
                    "timings": self.timings,
                });
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            }
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            match r {
                Value::Object(m) => {
                    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{}: {}", k, scalar(v))).collect();
                    writeln!(out, "{}", parts.join("  ")).unwrap();
                }
                other => writeln!(out, "{}", scalar(other)).unwrap(),
            }
        }
        for (k, v) in &self.totals {
            writeln!(out, "{}: {}", k, scalar(v)).unwrap();
        }
        if !self.timings.is_empty() {
            let parts: Vec<String> = self.timings.iter().map(|(k, v)| format!("{} {}s", k, v)).collect();
            writeln!(out, "elapsed: {}", parts.join(", ")).unwrap();
        }
        out
    }

    fn csv(&self) -> String {
        let rows = if self.rows.is_empty() { &self.results } else { &self.rows };
        let mut header: Vec<String> = Vec::new();
        for r in rows {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
        }
        let mut out = String::new();
        writeln!(out, "{}", header.join(",")).unwrap();
        for r in rows {
            let cells: Vec<String> =
                header.iter().map(|k| csv_cell(&r.get(k).map(scalar).unwrap_or_default())).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new(Some(25), "pairs");
        r.results.push(json!({"alpha": "1+t", "tuple": "(0, 0, 0, 0, t)"}));
        assert_eq!(r.render(Format::Csv), "alpha,tuple\n1+t,\"(0, 0, 0, 0, t)\"\n");
    }

    #[test]
    fn json_has_top_level_keys() {
        let mut r = Report::new(None, "verify");
        r.total("passed", true);
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        for k in ["q", "command", "results", "totals", "timings"] {
            assert!(v.get(k).is_some(), "{}", k);
        }
    }
}
