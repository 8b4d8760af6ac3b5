//! Verification reports shared by every checker.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ProbabilisticPass,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ProbabilisticPass => "probabilistic-pass",
            Status::Skipped => "skipped",
        })
    }
}

/// A concrete counterexample: a label plus the tuple or elements involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub values: Vec<usize>,
}

impl Witness {
    pub fn new(label: impl Into<String>, values: Vec<usize>) -> Self {
        Witness {
            label: label.into(),
            values,
        }
    }
}

/// Outcome of one named check.
///
/// A report with status `fail` always carries at least one witness; the only
/// way to reach that status is [`VerificationReport::record_failure`].
/// Wall time is kept for display but not serialized, so JSON output is
/// byte-stable for a fixed input and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub check: String,
    status: Status,
    pub instances: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, check: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            check: check.into(),
            status: Status::Pass,
            instances: 0,
            witnesses: Vec::new(),
            seed: None,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::ProbabilisticPass)
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn record_failure(&mut self, witness: Witness) {
        self.status = Status::Fail;
        self.witnesses.push(witness);
    }

    /// Marks a passing report as sampled. Failures stay failures.
    pub fn mark_probabilistic(&mut self, seed: u64) {
        self.seed = Some(seed);
        if self.status == Status::Pass {
            self.status = Status::ProbabilisticPass;
        }
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        if self.status != Status::Fail {
            self.status = Status::Skipped;
        }
        self.notes.push(reason.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    /// Folds `other` into `self`: instance counts add, witnesses concatenate,
    /// and the weaker status wins (fail < probabilistic-pass < pass).
    pub fn absorb(&mut self, other: VerificationReport) {
        self.instances += other.instances;
        self.elapsed += other.elapsed;
        if other.status == Status::Fail {
            self.status = Status::Fail;
        } else if other.status == Status::ProbabilisticPass && self.status == Status::Pass {
            self.status = Status::ProbabilisticPass;
        }
        if self.seed.is_none() {
            self.seed = other.seed;
        }
        self.witnesses.extend(other.witnesses);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} / {}: {} instances",
            self.status, self.subject, self.check, self.instances
        )?;
        if let Some(seed) = self.seed {
            write!(f, " (seed {seed})")?;
        }
        for w in &self.witnesses {
            write!(f, "\n    witness {}: {:?}", w.label, w.values)?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}

/// True when no report in the slice failed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| !r.failed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_carries_witness() {
        let mut r = VerificationReport::new("g", "assoc");
        assert!(r.passed());
        r.record_failure(Witness::new("tuple", vec![1, 2]));
        assert!(r.failed());
        assert_eq!(r.witnesses().len(), 1);
        r.mark_probabilistic(7);
        assert_eq!(r.status(), Status::Fail);
    }

    #[test]
    fn absorb_takes_weaker_status() {
        let mut a = VerificationReport::new("g", "x");
        a.instances = 3;
        let mut b = VerificationReport::new("g", "y");
        b.instances = 4;
        b.mark_probabilistic(1);
        a.absorb(b);
        assert_eq!(a.instances, 7);
        assert_eq!(a.status(), Status::ProbabilisticPass);
    }

    #[test]
    fn serialized_status_is_kebab_case() {
        let mut r = VerificationReport::new("g", "x");
        r.mark_probabilistic(42);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"probabilistic-pass\""));
        assert!(!json.contains("elapsed"));
    }
}
