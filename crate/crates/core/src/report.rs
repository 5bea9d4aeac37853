//! Verdict reports shared by every verifier.
//!
//! A report is an ordered list of named checks. A failing check always carries a
//! witness: the concrete equation instance (rendered with the relevant variable
//! names) that did not hold.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: false, witness: Some(witness.into()) });
    }

    /// Records a check, attaching the witness only when it failed.
    pub fn record(&mut self, name: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) {
        if passed {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    pub fn is_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends every check of `other`, prefixing names with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}: {}", c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        match self.failures().next() {
            None => format!("{}: {} checks passed", self.title, self.checks.len()),
            Some(first) => format!(
                "{}: {failed} of {} checks failed; first: {} ({})",
                self.title,
                self.checks.len(),
                first.name,
                first.witness.as_deref().unwrap_or("")
            ),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.title, if self.is_pass() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            match &c.witness {
                Some(w) => writeln!(f, "  FAIL {}: {w}", c.name)?,
                None => writeln!(f, "  ok   {}", c.name)?,
            }
        }
        Ok(())
    }
}
