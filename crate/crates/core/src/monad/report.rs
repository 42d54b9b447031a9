use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::quantale::{FiniteQuantale, Level};
use crate::semifilter::SemifilterTable;

/// Witnesses kept per check.
const MAX_WITNESSES: usize = 5;

/// Outcome of one named property over many cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), cases: 0, failures: 0, witnesses: Vec::new() }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn absorb(&mut self, other: &Check) {
        self.cases += other.cases;
        self.failures += other.failures;
        for w in &other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w.clone());
            }
        }
    }
}

/// A list of checks plus free-form facts, flagged incomplete when a budget
/// cut the run short.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub facts: Vec<(String, String)>,
    pub incomplete: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check_mut(&mut self, name: &str) -> &mut Check {
        match self.checks.iter().position(|c| c.name == name) {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(Check::new(name));
                self.checks.last_mut().expect("just pushed")
            }
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.facts.push((key.into(), value.into()));
    }

    pub fn absorb(&mut self, other: &Report) {
        for c in &other.checks {
            self.check_mut(&c.name).absorb(c);
        }
    }
}

pub fn show_levels(q: &FiniteQuantale, values: &[Level]) -> String {
    let parts: Vec<String> = values.iter().map(|&v| format!("{}", q.label(v))).collect();
    format!("[{}]", parts.join(", "))
}

pub fn show_table(q: &FiniteQuantale, t: &SemifilterTable) -> String {
    show_levels(q, t.values())
}
