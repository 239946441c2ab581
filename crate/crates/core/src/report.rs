//! Named pass/fail checks with witnesses.

use std::fmt;

use crate::error::{fmt_vec, Violation};
use crate::linalg::Rational;

/// One named identity, evaluated on every relevant basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub description: String,
    /// Number of basis tuples evaluated.
    pub checked: usize,
    pub failures: usize,
    /// First failing tuple, if any.
    pub witness: Option<Violation>,
    /// Informational checks are reported but never affect [`ConditionReport::passed`].
    pub informational: bool,
    /// Set when the check could not be evaluated at all.
    pub skipped: Option<String>,
}

impl Check {
    /// Evaluates `lhs == rhs` on every item produced by `cases`.
    pub fn evaluate<I>(name: &str, description: &str, cases: I) -> Check
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<Rational>, Vec<Rational>)>,
    {
        let mut check = Check {
            name: name.to_string(),
            description: description.to_string(),
            checked: 0,
            failures: 0,
            witness: None,
            informational: false,
            skipped: None,
        };
        for (indices, lhs, rhs) in cases {
            check.checked += 1;
            if lhs != rhs {
                check.failures += 1;
                if check.witness.is_none() {
                    check.witness = Some(Violation {
                        identity: description.to_string(),
                        indices,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        check
    }

    pub fn skipped(name: &str, description: &str, reason: &str) -> Check {
        Check {
            name: name.to_string(),
            description: description.to_string(),
            checked: 0,
            failures: 0,
            witness: None,
            informational: true,
            skipped: Some(reason.to_string()),
        }
    }

    pub fn informational(mut self) -> Check {
        self.informational = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.informational { " (informational)" } else { "" };
        if let Some(reason) = &self.skipped {
            return write!(f, "{}{}: skipped, {}", self.name, tag, reason);
        }
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{}{}: {} [{}/{} hold] {}",
            self.name,
            tag,
            verdict,
            self.checked - self.failures,
            self.checked,
            self.description
        )?;
        if let Some(w) = &self.witness {
            write!(
                f,
                "; witness {:?}: lhs = {}, rhs = {}",
                w.indices,
                fmt_vec(&w.lhs),
                fmt_vec(&w.rhs)
            )?;
        }
        Ok(())
    }
}

/// A list of named checks. Passes iff every non-informational check passes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    pub checks: Vec<Check>,
}

impl ConditionReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ConditionReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First failing mandatory check.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| !c.informational && !c.passed())
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}
