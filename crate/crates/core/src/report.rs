//! Check outcomes shared by every validator and diagram checker.

use std::fmt;

use crate::exactla::Matrix;

/// Where two supposedly equal values part ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which cell or diagram side the coordinate refers to.
    pub cell: String,
    pub coordinate: Option<(usize, usize)>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(cell: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Witness { cell: cell.into(), coordinate: None, lhs: lhs.into(), rhs: rhs.into() }
    }

    /// First differing entry of two matrices, or `None` when they are equal.
    pub fn compare(cell: impl Into<String>, lhs: &Matrix, rhs: &Matrix) -> Option<Witness> {
        if lhs.shape() != rhs.shape() {
            return Some(Witness {
                cell: cell.into(),
                coordinate: None,
                lhs: format!("shape {}x{}", lhs.rows(), lhs.cols()),
                rhs: format!("shape {}x{}", rhs.rows(), rhs.cols()),
            });
        }
        lhs.first_difference(rhs).map(|(r, c)| Witness {
            cell: cell.into(),
            coordinate: Some((r, c)),
            lhs: lhs.get(r, c).to_string(),
            rhs: rhs.get(r, c).to_string(),
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cell)?;
        if let Some((r, c)) = self.coordinate {
            write!(f, " at ({r}, {c})")?;
        }
        write!(f, ": {} vs {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    /// The check could not be evaluated (for instance a non-composable sample).
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fail(w) => Some(w),
            _ => None,
        }
    }
}

/// Ordered list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, outcome: Outcome) {
        self.checks.push(CheckResult { name: name.into(), outcome });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Outcome::Pass);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) {
        self.push(name, Outcome::Fail(witness));
    }

    pub fn error(&mut self, name: impl Into<String>, msg: impl Into<String>) {
        self.push(name, Outcome::Error(msg.into()));
    }

    /// Records an equality of matrices, with a witness on mismatch.
    pub fn check_eq(&mut self, name: impl Into<String>, lhs: &Matrix, rhs: &Matrix) -> bool {
        let name = name.into();
        match Witness::compare(name.clone(), lhs, rhs) {
            None => {
                self.pass(name);
                true
            }
            Some(w) => {
                self.fail(name, w);
                false
            }
        }
    }

    /// Records the result of a fallible check: errors become error entries.
    pub fn record(&mut self, name: impl Into<String>, r: crate::Result<Option<Witness>>) {
        match r {
            Ok(None) => self.pass(name),
            Ok(Some(w)) => self.fail(name, w),
            Err(e) => self.error(name, e.to_string()),
        }
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(CheckResult { name: format!("{prefix}{}", c.name), outcome: c.outcome });
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Names of failing checks, for comparing two reports.
    pub fn failing_names(&self) -> Vec<&str> {
        self.failures().map(|c| c.name.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}
