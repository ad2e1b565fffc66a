//! The JSON report written by every checking command.

use serde::{Deserialize, Serialize};

use wrmc::report::{Outcome, Report, Witness};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub cell: String,
    /// `[row, column]` of the first differing entry, when the shapes agree.
    pub coordinate: Option<[usize; 2]>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub format_version: u32,
    pub command: String,
    pub field: String,
    pub seed: Option<u64>,
    pub status: Status,
    pub summary: Summary,
    pub checks: Vec<CheckDoc>,
    /// Only present with `--verbose`, so reports are reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDoc {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            _ => 1,
        }
    }
}

fn witness_doc(w: &Witness) -> WitnessDoc {
    WitnessDoc { cell: w.cell.clone(), coordinate: w.coordinate.map(|(r, c)| [r, c]), lhs: w.lhs.clone(), rhs: w.rhs.clone() }
}

/// Collects checks from several library reports under prefixes.
#[derive(Default)]
pub struct ReportBuilder {
    checks: Vec<CheckDoc>,
}

impl ReportBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extend(&mut self, prefix: &str, report: &Report) {
        for c in &report.checks {
            let name = format!("{prefix}{}", c.name);
            let doc = match &c.outcome {
                Outcome::Pass => CheckDoc { name, status: Status::Pass, detail: None, witness: None },
                Outcome::Fail(w) => CheckDoc { name, status: Status::Fail, detail: None, witness: Some(witness_doc(w)) },
                Outcome::Error(e) => CheckDoc { name, status: Status::Error, detail: Some(e.clone()), witness: None },
            };
            self.checks.push(doc);
        }
    }

    /// Runs `f`; a library error becomes one error entry named `prefix`.
    pub fn run(&mut self, prefix: &str, f: impl FnOnce() -> wrmc::Result<Report>) {
        match f() {
            Ok(r) => self.extend(prefix, &r),
            Err(e) => self.error(prefix.trim_end_matches(": "), e.to_string()),
        }
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckDoc { name: name.into(), status: Status::Pass, detail: Some(detail.into()), witness: None });
    }

    pub fn error(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckDoc { name: name.into(), status: Status::Error, detail: Some(detail.into()), witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, w: &Witness) {
        self.checks.push(CheckDoc { name: name.into(), status: Status::Fail, detail: None, witness: Some(witness_doc(w)) });
    }

    /// Checks sorted by name; an empty report passes.
    pub fn finish(mut self, command: &str, field: &str, seed: Option<u64>) -> ReportDoc {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: self.checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            errors: count(Status::Error),
        };
        let status = if summary.errors > 0 {
            Status::Error
        } else if summary.failed > 0 {
            Status::Fail
        } else {
            Status::Pass
        };
        ReportDoc {
            format_version: FORMAT_VERSION,
            command: command.to_string(),
            field: field.to_string(),
            seed,
            status,
            summary,
            checks: self.checks,
            timing_ms: None,
        }
    }
}

pub fn to_json(doc: &ReportDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports always serialize");
    s.push('\n');
    s
}
