//! Result types for the verification suites.
//!
//! Two shapes cover every checker in the crate. [`Verdict`] is a single
//! yes/no answer where a failure carries a typed witness. [`Report`] is a
//! list of named checks, each passing, failing with a rendered witness, or
//! not applicable to the structure at hand; a report also collects free-form
//! observation notes for facts that are recorded but deliberately not
//! asserted.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of one check inside a [`Report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The check does not apply to this structure (for example, it needs a
    /// greatest element or lattice mode). Not counted as a failure.
    NotApplicable,
}

/// One named check with its outcome and an optional rendered witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub outcome: Outcome,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(label: impl Into<String>) -> Self {
        Check { label: label.into(), outcome: Outcome::Pass, witness: None }
    }

    pub fn fail(label: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { label: label.into(), outcome: Outcome::Fail, witness: Some(witness.into()) }
    }

    pub fn not_applicable(label: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            outcome: Outcome::NotApplicable,
            witness: Some(reason.into()),
        }
    }
}

/// A batch of checks produced by one verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    /// Observations that are recorded without being asserted, such as
    /// empirical answers to questions the theory leaves open.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// True when no check failed (not-applicable checks do not count).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for check in &self.checks {
            let tag = match check.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::NotApplicable => "n/a ",
            };
            match &check.witness {
                Some(w) => writeln!(f, "  [{tag}] {}: {}", check.label, w)?,
                None => writeln!(f, "  [{tag}] {}", check.label)?,
            }
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// A single property check: either it holds, or it fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
