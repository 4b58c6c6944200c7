//! Check reports shared by the validators and verifiers.

use alloc::string::String;
use alloc::vec::Vec;

/// One numerical check at one location.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub check: String,
    pub location: String,
    pub residual: f64,
    pub pass: bool,
}

/// A check that could not be run, typically because a window does not load the labels it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub check: String,
    pub location: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub skipped: Vec<Skipped>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: &str, location: impl Into<String>, residual: f64, pass: bool) {
        // NaN residuals never pass.
        let pass = pass && !residual.is_nan();
        self.checks.push(Check { check: check.into(), location: location.into(), residual, pass });
    }

    pub fn skip(&mut self, check: &str, location: impl Into<String>, reason: impl Into<String>) {
        self.skipped
            .push(Skipped { check: check.into(), location: location.into(), reason: reason.into() });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.skipped.extend(other.skipped);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    /// Largest residual among checks whose name starts with `prefix`.
    pub fn max_residual_of(&self, prefix: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.check.starts_with(prefix))
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }

    pub fn passed(&self, prefix: &str) -> bool {
        self.checks.iter().filter(|c| c.check.starts_with(prefix)).all(|c| c.pass)
    }

    pub fn has(&self, prefix: &str) -> bool {
        self.checks.iter().any(|c| c.check.starts_with(prefix))
    }
}
