use std::fmt::Write as _;

use clap::ValueEnum;
use lra_core::Report;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A report with its timing and an optional rendered result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    pub timing_ms: u64,
    pub title: String,
    pub verdict: &'static str,
}

impl VerdictReport {
    pub fn new(report: &Report, result: Option<String>, timing_ms: u64) -> Self {
        VerdictReport {
            checks: report
                .checks
                .iter()
                .map(|c| CheckEntry {
                    name: c.name.clone(),
                    status: if c.passed { "pass" } else { "fail" },
                    witness: c.witness.clone(),
                })
                .collect(),
            result,
            timing_ms,
            title: report.title.clone(),
            verdict: if report.is_pass() { "pass" } else { "fail" },
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_pass() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("verdicts serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("{}: {}\n", self.title, self.verdict.to_uppercase());
                for c in &self.checks {
                    match &c.witness {
                        Some(w) => writeln!(s, "  FAIL {}: {w}", c.name),
                        None => writeln!(s, "  ok   {}", c.name),
                    }
                    .expect("write to string");
                }
                if let Some(r) = &self.result {
                    writeln!(s, "result:\n{}", r.trim_end()).expect("write to string");
                }
                writeln!(s, "time: {} ms", self.timing_ms).expect("write to string");
                s
            }
        }
    }
}
