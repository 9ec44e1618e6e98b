//! Verification reports: which identities were checked and which failed.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Computed values worth reporting (dimensions, constants, bases).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub outputs: BTreeMap<String, String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), cases: 0, failures: Vec::new(), outputs: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one case; a failure keeps both sides for the report.
    pub fn check_eq<T: PartialEq + Display>(&mut self, inputs: impl Display, lhs: &T, rhs: &T) -> bool {
        self.cases += 1;
        let ok = lhs == rhs;
        if !ok {
            self.failures.push(Failure { inputs: inputs.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
        ok
    }

    /// Records a boolean case with free-form descriptions of the two sides.
    pub fn check(&mut self, inputs: impl Display, ok: bool, lhs: impl Display, rhs: impl Display) -> bool {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { inputs: inputs.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
        ok
    }

    pub fn output(&mut self, key: impl Into<String>, value: impl Display) {
        self.outputs.insert(key.into(), value.to_string());
    }

    /// Folds another report's cases and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        for (k, v) in other.outputs {
            self.outputs.insert(format!("{}.{k}", other.suite), v);
        }
    }
}
