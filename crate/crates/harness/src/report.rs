use std::fmt;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// One check. `witness` is empty on a pass; on a fail it names the inputs
/// that reproduce the failure; on a skip it gives the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckResult { id: id.into(), status: Status::Pass, witness: String::new() }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { id: id.into(), status: Status::Fail, witness: witness.into() }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult { id: id.into(), status: Status::Skipped, witness: reason.into() }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(id: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(id),
            Some(w) => Self::fail(id, w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    /// Name of the graph the checks ran on.
    pub subject: String,
    /// Sorted by id.
    pub checks: Vec<CheckResult>,
    pub wall_time: Duration,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Checks whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    /// Line-oriented rendering; wall time is left out so that output is
    /// reproducible.
    pub fn render(&self) -> String {
        let mut s = format!("subject {}\n", self.subject);
        for c in &self.checks {
            if c.witness.is_empty() {
                s.push_str(&format!("  {} {}\n", c.status, c.id));
            } else {
                s.push_str(&format!("  {} {} :: {}\n", c.status, c.id, c.witness.replace('\n', " | ")));
            }
        }
        s
    }
}
