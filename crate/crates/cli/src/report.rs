//! Verification reports and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;

/// JSON schema version carried in every report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Outcome of one suite. A failure carries a witness; a skip carries a reason.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl SuiteResult {
    pub fn pass(name: &str, details: Vec<String>) -> Self {
        Self { name: name.into(), status: Status::Pass, details, witness: None, reason: None }
    }

    pub fn fail(name: &str, details: Vec<String>, witness: String) -> Self {
        Self { name: name.into(), status: Status::Fail, details, witness: Some(witness), reason: None }
    }

    pub fn skipped(name: &str, details: Vec<String>, reason: String) -> Self {
        Self { name: name.into(), status: Status::Skipped, details, witness: None, reason: Some(reason) }
    }
}

/// One row of the semilinearity table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaEntry {
    pub automorphism: String,
    pub order: usize,
    /// `"p/q"`, or `null` when the lift could not be computed.
    pub lambda: Option<String>,
    pub omega_compatible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportOptions {
    pub epsilon: Vec<String>,
    pub suites: Vec<String>,
    pub der_cap: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    #[serde(rename = "type")]
    pub simple_type: String,
    pub status: Status,
    pub options: ReportOptions,
    pub suites: Vec<SuiteResult>,
    pub lambda_table: Vec<LambdaEntry>,
    pub dims: BTreeMap<String, usize>,
    /// Wall-clock seconds per suite; only present when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    /// `Fail` when any suite failed, `Pass` otherwise.
    pub fn overall(suites: &[SuiteResult]) -> Status {
        if suites.iter().any(|s| s.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}; expected text or json")),
        }
    }
}

pub fn render_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "type {}  status {}", report.simple_type, report.status.as_str());
    let width = report.suites.iter().map(|s| s.name.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:<width$}  {:<7}  details", "suite", "status");
    for s in &report.suites {
        let first = s.details.first().cloned().unwrap_or_default();
        let _ = writeln!(out, "{:<width$}  {:<7}  {}", s.name, s.status.as_str(), first);
        for d in s.details.iter().skip(1) {
            let _ = writeln!(out, "{:<width$}  {:<7}  {}", "", "", d);
        }
        if let Some(w) = &s.witness {
            let _ = writeln!(out, "{:<width$}  {:<7}  witness: {}", "", "", w);
        }
        if let Some(r) = &s.reason {
            let _ = writeln!(out, "{:<width$}  {:<7}  reason: {}", "", "", r);
        }
    }
    if !report.lambda_table.is_empty() {
        let _ = writeln!(out, "lambda table");
        for e in &report.lambda_table {
            let _ = writeln!(
                out,
                "  {:<16} order {:<2} lambda {}",
                e.automorphism,
                e.order,
                e.lambda.as_deref().unwrap_or("-")
            );
        }
    }
    if !report.dims.is_empty() {
        let _ = writeln!(out, "dimensions");
        for (k, v) in &report.dims {
            let _ = writeln!(out, "  {k} = {v}");
        }
    }
    if let Some(t) = &report.timings {
        let _ = writeln!(out, "timings (s)");
        for (k, v) in t {
            let _ = writeln!(out, "  {k} = {v:.3}");
        }
    }
    out
}

pub fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Json => render_json(report),
    }
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &VerificationReport, format: Format, path: Option<&Path>) -> io::Result<()> {
    let text = render(report, format);
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
