//! Named pass/fail assertions collected by the expected-structure checks.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub assertions: Vec<Assertion>,
}

impl CheckResult {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records an assertion; `detail` should show the observed value.
    pub fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.to_string(), passed, detail: detail.into() });
    }

    /// Records `observed == expected`.
    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, observed: T, expected: T) {
        let passed = observed == expected;
        self.record(name, passed, format!("observed {observed:?}, expected {expected:?}"));
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn extend(&mut self, other: CheckResult) {
        self.assertions.extend(other.assertions);
    }
}
