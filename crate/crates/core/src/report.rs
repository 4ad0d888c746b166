use std::collections::BTreeMap;

use serde::Serialize;

/// One failed identity: which suite, where, and what was expected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub suite: String,
    pub m: usize,
    pub item: String,
    pub indices: BTreeMap<String, i64>,
    pub expected: String,
    pub got: String,
}

/// Outcome of a batch of exact identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub m: usize,
    pub checks: u64,
    pub failures: Vec<Failure>,
    /// Observations that are recorded but do not fail the suite.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(suite: &str, m: usize) -> Self {
        Self {
            suite: suite.to_string(),
            m,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one check; on mismatch a failure with the given indices.
    pub fn check<T: PartialEq + std::fmt::Display>(
        &mut self,
        item: &str,
        indices: &[(&str, i64)],
        expected: T,
        got: T,
    ) -> bool {
        self.checks += 1;
        if expected == got {
            return true;
        }
        self.failures.push(Failure {
            suite: self.suite.clone(),
            m: self.m,
            item: item.to_string(),
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
        false
    }

    pub fn check_true(&mut self, item: &str, indices: &[(&str, i64)], ok: bool) -> bool {
        self.check(item, indices, true, ok)
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}
