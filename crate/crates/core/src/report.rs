//! Suite reports and their text and JSON renderings.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CheckResult {
    pub ring: String,
    pub check: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(ring: impl Into<String>, check: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        CheckResult { ring: ring.into(), check: check.into(), pass, witness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub catalog: Vec<String>,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl SuiteReport {
    /// Sorts results by `(ring, check)` and tallies them.
    pub fn new(suite: impl Into<String>, mut catalog: Vec<String>, mut results: Vec<CheckResult>) -> Self {
        catalog.sort();
        catalog.dedup();
        results.sort();
        let pass = results.iter().filter(|r| r.pass).count();
        SuiteReport {
            suite: suite.into(),
            catalog,
            summary: Summary { pass, fail: results.len() - pass },
            results,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    /// Distinct rings that produced at least one result.
    pub fn instances(&self) -> usize {
        let mut rings: Vec<&str> = self.results.iter().map(|r| r.ring.as_str()).collect();
        rings.dedup();
        rings.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let ring_w = self.results.iter().map(|r| r.ring.len()).max().unwrap_or(4).max(4);
        let check_w = self.results.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
        let mut s = String::new();
        writeln!(s, "suite {} ({} rings in catalog)", self.suite, self.catalog.len()).unwrap();
        writeln!(s, "{:<ring_w$}  {:<check_w$}  {:<4}  witness", "ring", "check", "pass").unwrap();
        for r in &self.results {
            let verdict = if r.pass { "ok" } else { "FAIL" };
            writeln!(
                s,
                "{:<ring_w$}  {:<check_w$}  {:<4}  {}",
                r.ring,
                r.check,
                verdict,
                r.witness.as_deref().unwrap_or("-")
            )
            .unwrap();
        }
        writeln!(s, "summary: {} pass, {} fail", self.summary.pass, self.summary.fail).unwrap();
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    /// Writes to `path`, or standard output when `None`.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        let body = self.render(format);
        match path {
            Some(p) => std::fs::write(p, body),
            None => io::Write::write_all(&mut io::stdout().lock(), body.as_bytes()),
        }
    }
}
