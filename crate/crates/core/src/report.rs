//! Structured pass/fail reports produced by the verification operations.
//!
//! A report is a list of named checks. Each entry carries a status, an
//! optional witness (the concrete inputs that exhibit a failure), and an
//! optional symbolic residual. Entries marked non-gating are informational:
//! they are printed and serialized but do not affect the overall verdict or
//! the CLI exit code.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Na,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Na => write!(f, "n/a"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
    pub residual: Option<String>,
    pub gating: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn pass(&mut self, check: impl Into<String>) {
        self.push(CheckEntry {
            check: check.into(),
            status: Status::Pass,
            witness: None,
            residual: None,
            gating: true,
        });
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.push(CheckEntry {
            check: check.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            residual: None,
            gating: true,
        });
    }

    pub fn fail_with_residual(
        &mut self,
        check: impl Into<String>,
        witness: impl Into<String>,
        residual: impl Into<String>,
    ) {
        self.push(CheckEntry {
            check: check.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            residual: Some(residual.into()),
            gating: true,
        });
    }

    pub fn na(&mut self, check: impl Into<String>) {
        self.push(CheckEntry {
            check: check.into(),
            status: Status::Na,
            witness: None,
            residual: None,
            gating: true,
        });
    }

    /// Record a status outcome; `pass`/`fail` shorthand for checks computed
    /// from an optional witness.
    pub fn record(&mut self, check: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(check),
            Some(w) => self.fail(check, w),
        }
    }

    /// Record an informational (non-gating) check outcome.
    pub fn record_advisory(
        &mut self,
        check: impl Into<String>,
        witness: Option<String>,
        residual: Option<String>,
    ) {
        let status = if witness.is_none() {
            Status::Pass
        } else {
            Status::Fail
        };
        self.push(CheckEntry {
            check: check.into(),
            status,
            witness,
            residual,
            gating: false,
        });
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    /// True when no gating entry failed.
    pub fn all_passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !(e.gating && e.status == Status::Fail))
    }

    /// True when no entry at all failed, gating or not.
    pub fn strictly_clean(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn status_of(&self, check: &str) -> Option<Status> {
        self.entries
            .iter()
            .find(|e| e.check == check)
            .map(|e| e.status)
    }

    pub fn witness_of(&self, check: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.check == check)
            .and_then(|e| e.witness.as_deref())
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Merge under a name prefix, keeping check names unique across suites.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            e.check = format!("{prefix}.{}", e.check);
            self.entries.push(e);
        }
    }

    /// Entries sorted by check name; rendering order is deterministic.
    pub fn sorted_entries(&self) -> Vec<&CheckEntry> {
        let mut v: Vec<&CheckEntry> = self.entries.iter().collect();
        v.sort_by(|a, b| a.check.cmp(&b.check));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.sorted_entries()
                .into_iter()
                .map(|e| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("check".into(), e.check.clone().into());
                    obj.insert("status".into(), e.status.to_string().into());
                    if let Some(w) = &e.witness {
                        obj.insert("witness".into(), w.clone().into());
                    }
                    if let Some(r) = &e.residual {
                        obj.insert("residual".into(), r.clone().into());
                    }
                    if !e.gating {
                        obj.insert("advisory".into(), true.into());
                    }
                    serde_json::Value::Object(obj)
                })
                .collect(),
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.sorted_entries() {
            write!(f, "{}: {}", e.check, e.status)?;
            if !e.gating {
                write!(f, " (advisory)")?;
            }
            if let Some(w) = &e.witness {
                write!(f, " [witness: {w}]")?;
            }
            if let Some(r) = &e.residual {
                write!(f, " [residual: {r}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
