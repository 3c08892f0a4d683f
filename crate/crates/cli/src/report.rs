//! Report documents: case records, summary counts, text and JSON output.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::command::ReportFormat;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Operation label for the open-question experiment; its cases never count as failures.
pub const EXPERIMENT_OPERATION: &str = "rmk4.2 tor_gi_experiment [open question \u{2014} empirical only]";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub operation: String,
    pub inputs: Vec<String>,
    pub output: String,
    pub verdict: bool,
    pub provenance: Provenance,
    /// Seconds.
    pub elapsed: f64,
    /// Whether the case is an oracle comparison that disagreed.
    #[serde(skip)]
    pub mismatch: bool,
}

impl CaseRecord {
    pub fn new(operation: impl Into<String>, inputs: Vec<String>, output: impl Into<String>, verdict: bool) -> Self {
        CaseRecord {
            operation: operation.into(),
            inputs,
            output: output.into(),
            verdict,
            provenance: Provenance::ClosedForm,
            elapsed: 0.0,
            mismatch: false,
        }
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn with_elapsed(mut self, seconds: f64) -> Self {
        self.elapsed = seconds;
        self
    }

    pub fn key(&self) -> (&str, &[String]) {
        (&self.operation, &self.inputs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub failures: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub ring: Option<String>,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Default for ReportDocument {
    fn default() -> Self {
        ReportDocument { version: VERSION.to_string(), ring: None, cases: Vec::new(), summary: Summary::default() }
    }
}

impl ReportDocument {
    pub fn push(&mut self, case: CaseRecord) {
        self.summary.cases += 1;
        if !case.verdict {
            self.summary.failures += 1;
        }
        if case.mismatch {
            self.summary.mismatches += 1;
        }
        self.cases.push(case);
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = CaseRecord>) {
        for c in cases {
            self.push(c);
        }
    }

    pub fn is_success(&self) -> bool {
        self.summary.failures == 0 && self.summary.mismatches == 0
    }

    /// Process exit code for this report: 0 on success, 1 on any failure.
    pub fn exit_code(&self) -> i32 {
        if self.is_success() {
            0
        } else {
            1
        }
    }

    /// Copy with timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> ReportDocument {
        let mut d = self.clone();
        for c in &mut d.cases {
            c.elapsed = 0.0;
        }
        d.version = String::new();
        d
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gorinj {}", self.version);
        let _ = writeln!(out, "ring: {}", self.ring.as_deref().unwrap_or("(none)"));
        let mut experiment_banner = false;
        for c in &self.cases {
            if c.operation == EXPERIMENT_OPERATION && !experiment_banner {
                let _ = writeln!(out, "-- open question: empirical only, not asserted --");
                experiment_banner = true;
            }
            let mark = if c.verdict { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "{mark} {} [{}] -> {} ({:?}, {:.6}s)",
                c.operation,
                c.inputs.join("; "),
                c.output,
                c.provenance,
                c.elapsed
            );
        }
        let _ = writeln!(
            out,
            "summary: {} cases, {} failures, {} mismatches",
            self.summary.cases, self.summary.failures, self.summary.mismatches
        );
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.to_text(),
            ReportFormat::Json => self.to_json(),
        }
    }
}

pub fn emit_report(doc: &ReportDocument, path: &Path, format: ReportFormat) -> std::io::Result<()> {
    std::fs::write(path, doc.render(format))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document() {
        let d = ReportDocument::default();
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["cases"], serde_json::json!([]));
        assert_eq!(v["summary"], serde_json::json!({"cases": 0, "failures": 0, "mismatches": 0}));
        assert!(v.get("version").is_some() && v.get("ring").is_some());
        assert_eq!(d.exit_code(), 0);
    }

    #[test]
    fn counts() {
        let mut d = ReportDocument::default();
        d.push(CaseRecord::new("tensor", vec!["Q".into(), "Q".into()], "Q", true));
        let mut bad = CaseRecord::new("oracle", vec![], "x", false).with_provenance(Provenance::Both);
        bad.mismatch = true;
        d.push(bad);
        assert_eq!(d.summary, Summary { cases: 2, failures: 1, mismatches: 1 });
        assert_eq!(d.exit_code(), 1);
        let case: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        let fields: Vec<&str> = case["cases"][0].as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(fields, vec!["elapsed", "inputs", "operation", "output", "provenance", "verdict"]);
        assert_eq!(case["cases"][1]["provenance"], "both");
    }
}
