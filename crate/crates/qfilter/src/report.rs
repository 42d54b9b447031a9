//! Reports as a flat list of entries. The text and structured renderings
//! are produced from the same entries, one text line per entry (plus one
//! line per witness), so neither carries information the other lacks.

use std::fmt::Write as _;

use serde::Serialize;

use qfilter_core::monad::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entry {
    Section { title: String },
    Fact { key: String, value: String },
    Check { name: String, passed: bool, cases: u64, failures: u64, witnesses: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Document {
    pub command: String,
    pub entries: Vec<Entry>,
    pub status: String,
    pub exit_code: i32,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Document { command: command.into(), entries: Vec::new(), status: String::new(), exit_code: 0 }
    }

    pub fn section(&mut self, title: impl Into<String>) {
        self.entries.push(Entry::Section { title: title.into() });
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push(Entry::Fact { key: key.into(), value: value.to_string() });
    }

    pub fn check(&mut self, c: &Check) {
        self.entries.push(Entry::Check {
            name: c.name.clone(),
            passed: c.passed(),
            cases: c.cases,
            failures: c.failures,
            witnesses: c.witnesses.clone(),
        });
    }

    /// A single yes/no check.
    pub fn verdict(&mut self, name: &str, ok: bool, witness: Option<String>) {
        let mut c = Check::new(name);
        c.record(ok, || witness.unwrap_or_default());
        self.check(&c);
    }

    pub fn report(&mut self, r: &Report) {
        for (k, v) in &r.facts {
            self.fact(k.clone(), v);
        }
        for c in &r.checks {
            self.check(c);
        }
        if let Some(why) = &r.incomplete {
            self.fact("incomplete", why);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| !matches!(e, Entry::Check { passed: false, .. }))
    }

    pub fn finish(&mut self, status: impl Into<String>, exit_code: i32) {
        self.status = status.into();
        self.exit_code = exit_code;
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qfilter {}", self.command);
        for e in &self.entries {
            match e {
                Entry::Section { title } => {
                    let _ = writeln!(out, "== {title} ==");
                }
                Entry::Fact { key, value } => {
                    let _ = writeln!(out, "{key}: {value}");
                }
                Entry::Check { name, passed, cases, failures, witnesses } => {
                    let tag = if *passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "[{tag}] {name} ({cases} cases, {failures} failures)");
                    for w in witnesses {
                        let _ = writeln!(out, "    witness: {w}");
                    }
                }
            }
        }
        let _ = writeln!(out, "status: {} (exit {})", self.status, self.exit_code);
        out
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_has_one_line_per_entry() {
        let mut d = Document::new("quantale");
        d.section("checks");
        d.fact("condition (S)", "satisfied");
        let mut c = Check::new("adjunction");
        c.record(false, || "x=1".into());
        c.record(true, String::new);
        d.check(&c);
        d.finish("failed", 1);
        let text = d.to_text();
        assert_eq!(text.lines().count(), 1 + 3 + 1 + 1);
        assert!(text.contains("condition (S): satisfied"));
        assert!(text.contains("[FAIL] adjunction (2 cases, 1 failures)"));
        let json: serde_json::Value = serde_json::from_str(&d.to_structured()).unwrap();
        assert_eq!(json["entries"].as_array().unwrap().len(), 3);
        assert_eq!(json["exit_code"], 1);
    }
}
