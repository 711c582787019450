use std::fmt;

use crate::rowfin::{RowFiniteMap, Window};

/// Concrete evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub location: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Discrepancy),
    /// A resource cap was hit; not a construction failure.
    BoundExceeded(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Pass }
    }

    pub fn fail(name: impl Into<String>, location: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            outcome: Outcome::Fail(Discrepancy { location: location.into(), expected: expected.into(), got: got.into() }),
        }
    }

    pub fn bound_exceeded(name: impl Into<String>, msg: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::BoundExceeded(msg.into()) }
    }

    /// Pass when `got` equals `expected` on every row of the window.
    pub fn rows_equal(name: impl Into<String>, expected: &RowFiniteMap, got: &RowFiniteMap, w: Window) -> Self {
        match expected.first_discrepancy(got, w) {
            None => Self::pass(name),
            Some(d) => Self::fail(name, format!("row {}", d.row), d.left.to_string(), d.right.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "pass  {}", self.name),
            Outcome::Fail(d) => write!(f, "FAIL  {} at {}: expected {}, got {}", self.name, d.location, d.expected, d.got),
            Outcome::BoundExceeded(m) => write!(f, "bound {} ({m})", self.name),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| c.failed())
}
