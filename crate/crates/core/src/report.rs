//! Pass/fail records returned by every verification routine.

use std::fmt;

use serde::Serialize;

use crate::subset::SubsetMask;

/// Counter-example attached to a failed check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub sets: Vec<SubsetMask>,
    pub detail: String,
}

impl Witness {
    pub fn new(sets: Vec<SubsetMask>, detail: impl Into<String>) -> Self {
        Witness { sets, detail: detail.into() }
    }

    pub fn detail(detail: impl Into<String>) -> Self {
        Witness { sets: Vec::new(), detail: detail.into() }
    }
}

/// Outcome of a check. Failed checks carry the first witness in
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    /// Number of identity instances evaluated.
    pub cases: u64,
    /// False when the check ran on a seeded sample instead of every case.
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            cases: 0,
            exhaustive: true,
            seed: None,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Record a failure unless one is already recorded.
    pub fn fail(&mut self, witness: Witness) {
        if self.passed {
            self.passed = false;
            self.witness = Some(witness);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note(note);
        self
    }

    pub fn sampled(mut self, seed: u64) -> Self {
        self.exhaustive = false;
        self.seed = Some(seed);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        let scope = if self.exhaustive { "exhaustive" } else { "sampled" };
        write!(f, "{}: {verdict} ({} cases, {scope})", self.check, self.cases)?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness:")?;
            for s in &w.sets {
                write!(f, " {s}")?;
            }
            if !w.detail.is_empty() {
                write!(f, " [{}]", w.detail)?;
            }
        }
        Ok(())
    }
}
