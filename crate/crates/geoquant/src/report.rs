//! Report model and its deterministic serializations.
//!
//! The structured form is TOML-compatible text with a fixed section order:
//! `schema`, `demo`, `[config]`, `[results]`, one `[[check]]` per acceptance
//! check, `[[note]]` entries, and a `[footer]` holding the wall time. Floats are
//! written at 12 significant digits. Everything above the footer is a pure
//! function of the configuration.

use std::fmt::Write as _;

pub const SCHEMA: &str = "geoquant-report/1";
/// First line of the footer; everything from here on is excluded from determinism checks.
pub const FOOTER_MARKER: &str = "[footer]";

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Floats(Vec<f64>),
    Ints(Vec<i64>),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<Vec<f64>> for Value {
    fn from(x: Vec<f64>) -> Self {
        Value::Floats(x)
    }
}

impl From<Vec<usize>> for Value {
    fn from(x: Vec<usize>) -> Self {
        Value::Ints(x.into_iter().map(|v| v as i64).collect())
    }
}

/// One acceptance check: `value` compared against `limit` by `passed`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
    /// Relation the check tests, as a formula.
    pub anchor: String,
}

impl Check {
    /// Passes when `value < limit`.
    pub fn below(name: &str, value: f64, limit: f64, anchor: &str) -> Self {
        Self {
            name: name.into(),
            passed: value < limit,
            value,
            limit,
            anchor: anchor.into(),
        }
    }

    /// Passes when `value > limit`.
    pub fn above(name: &str, value: f64, limit: f64, anchor: &str) -> Self {
        Self {
            name: name.into(),
            passed: value > limit,
            value,
            limit,
            anchor: anchor.into(),
        }
    }

    /// Boolean check; `value` is 1 or 0 and `limit` is 1.
    pub fn holds(name: &str, passed: bool, anchor: &str) -> Self {
        Self {
            name: name.into(),
            passed,
            value: if passed { 1.0 } else { 0.0 },
            limit: 1.0,
            anchor: anchor.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantReport {
    pub demo: String,
    pub config: Vec<(String, Value)>,
    pub results: Vec<(String, Value)>,
    pub checks: Vec<Check>,
    /// Where each reference value comes from.
    pub notes: Vec<String>,
    /// Set when a module error stopped the demo.
    pub error: Option<String>,
    pub wall_time_s: f64,
}

impl QuantReport {
    pub fn new(demo: &str) -> Self {
        Self {
            demo: demo.into(),
            config: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            error: None,
            wall_time_s: 0.0,
        }
    }

    pub fn config(&mut self, key: &str, value: impl Into<Value>) {
        self.config.push((key.into(), value.into()));
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.push((key.into(), value.into()));
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn to_structured(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "schema = {}", quote(SCHEMA));
        let _ = writeln!(s, "demo = {}", quote(&self.demo));
        let _ = writeln!(s, "passed = {}", self.passed());
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error = {}", quote(e));
        }
        s.push_str("\n[config]\n");
        for (k, v) in &self.config {
            let _ = writeln!(s, "{k} = {}", render(v));
        }
        s.push_str("\n[results]\n");
        for (k, v) in &self.results {
            let _ = writeln!(s, "{k} = {}", render(v));
        }
        for c in &self.checks {
            s.push_str("\n[[check]]\n");
            let _ = writeln!(s, "name = {}", quote(&c.name));
            let _ = writeln!(s, "passed = {}", c.passed);
            let _ = writeln!(s, "value = {}", float(c.value));
            let _ = writeln!(s, "limit = {}", float(c.limit));
            let _ = writeln!(s, "anchor = {}", quote(&c.anchor));
        }
        for n in &self.notes {
            s.push_str("\n[[note]]\n");
            let _ = writeln!(s, "text = {}", quote(n));
        }
        let _ = write!(
            s,
            "\n{FOOTER_MARKER}\nwall_time_s = {}\n",
            float(self.wall_time_s)
        );
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{SCHEMA}  demo: {}", self.demo);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        s.push_str("\nconfig\n");
        for (k, v) in &self.config {
            let _ = writeln!(s, "  {k:<24} {}", render_plain(v));
        }
        s.push_str("\nresults\n");
        for (k, v) in &self.results {
            let _ = writeln!(s, "  {k:<24} {}", render_plain(v));
        }
        s.push('\n');
        s.push_str(&self.summary_table());
        if !self.notes.is_empty() {
            s.push_str("\nnotes\n");
            for n in &self.notes {
                let _ = writeln!(s, "  - {n}");
            }
        }
        let _ = write!(
            s,
            "\n{FOOTER_MARKER}\nwall_time_s = {}\n",
            float(self.wall_time_s)
        );
        s
    }

    /// Table printed to standard output on every run.
    pub fn summary_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<6} {:<width$} {:>12} {:>12}  anchor",
            "status", "check", "value", "limit"
        );
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<6} {:<width$} {:>12.4e} {:>12.4e}  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.limit,
                c.anchor
            );
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            s,
            "{}: {} checks, {failed} failed{}",
            self.demo,
            self.checks.len(),
            if self.error.is_some() {
                ", stopped by error"
            } else {
                ""
            }
        );
        s
    }
}

/// The report body without its footer.
pub fn deterministic_body(report: &str) -> &str {
    match report.find(FOOTER_MARKER) {
        Some(i) => &report[..i],
        None => report,
    }
}

fn float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if x == 0.0 {
        // Drop the sign of negative zero.
        format!("{:.11e}", 0.0)
    } else {
        format!("{x:.11e}")
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn render(v: &Value) -> String {
    match v {
        Value::Float(x) => float(*x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(t) => quote(t),
        Value::Floats(xs) => format!(
            "[{}]",
            xs.iter().map(|x| float(*x)).collect::<Vec<_>>().join(", ")
        ),
        Value::Ints(xs) => format!(
            "[{}]",
            xs.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn render_plain(v: &Value) -> String {
    match v {
        Value::Float(x) => format!("{x:.6e}"),
        Value::Text(t) => t.clone(),
        Value::Floats(xs) => format!(
            "[{}]",
            xs.iter()
                .map(|x| format!("{x:.6}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => render(other),
    }
}
