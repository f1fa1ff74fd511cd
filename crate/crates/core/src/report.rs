//! Verification results.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

/// A concrete witness that a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Basis indices of each input, one per input leg.
    pub inputs: Vec<Vec<usize>>,
    /// Basis names of the same tuple.
    pub labels: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

impl Failure {
    pub fn message(detail: impl Into<String>) -> Self {
        Failure {
            inputs: Vec::new(),
            labels: Vec::new(),
            lhs: String::new(),
            rhs: String::new(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.labels.is_empty() {
            write!(
                f,
                "at ({}): {} ≠ {}",
                self.labels.join(", "),
                self.lhs,
                self.rhs
            )?;
            if !self.detail.is_empty() {
                write!(f, "; ")?;
            }
        }
        write!(f, "{}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(Failure),
    /// Informational result that is neither a pass nor a failure.
    Note {
        text: String,
    },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn note(text: impl Into<String>) -> Self {
        Outcome::Note { text: text.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(with = "micros")]
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn new(id: &str, anchor: &str, outcome: Outcome, elapsed: Duration) -> Self {
        CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            outcome,
            elapsed,
        }
    }

    pub fn pass(id: &str, anchor: &str) -> Self {
        Self::new(id, anchor, Outcome::Pass, Duration::ZERO)
    }

    pub fn fail(id: &str, anchor: &str, detail: impl Into<String>) -> Self {
        Self::new(
            id,
            anchor,
            Outcome::Fail(Failure::message(detail)),
            Duration::ZERO,
        )
    }

    pub fn note(id: &str, anchor: &str, text: impl Into<String>) -> Self {
        Self::new(id, anchor, Outcome::note(text), Duration::ZERO)
    }

    /// Pass if `ok`, otherwise a failure carrying `detail`.
    pub fn expect(id: &str, anchor: &str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(id, anchor)
        } else {
            Self::fail(id, anchor, detail())
        }
    }
}

mod micros {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_micros() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.checks.push(rec);
    }

    /// Appends another report, prefixing its check ids.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for mut rec in other.checks {
            rec.id = format!("{prefix}/{}", rec.id);
            self.checks.push(rec);
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome.is_pass()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome.is_fail()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.outcome.is_fail())
    }

    pub fn find(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{} passed, {} failed", self.passed(), self.failed());
        if let Some(f) = self.failures().next() {
            if let Outcome::Fail(fail) = &f.outcome {
                s.push_str(&format!("; first failure {}: {}", f.id, fail));
            }
        }
        s
    }
}

impl FromIterator<CheckRecord> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = CheckRecord>>(iter: I) -> Self {
        VerificationReport {
            checks: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "PASS {}", c.id)?,
                Outcome::Fail(x) => writeln!(f, "FAIL {} [{}] {}", c.id, c.anchor, x)?,
                Outcome::Note { text } => writeln!(f, "NOTE {} {}", c.id, text)?,
            }
        }
        write!(f, "{}", self.summary())
    }
}
