//! Proof traces: ordered `(step, detail)` records of exact intermediates.

use std::fmt;

use crate::arith::RationalInterval;
use crate::poly::RootIsolation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, step: impl Into<String>, detail: impl fmt::Display) {
        self.steps.push(TraceStep {
            step: step.into(),
            detail: detail.to_string(),
        });
    }

    pub fn extend(&mut self, other: Trace) {
        self.steps.extend(other.steps);
    }

    /// Append `other` with every step name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Trace) {
        self.steps
            .extend(other.steps.into_iter().map(|s| TraceStep {
                step: format!("{prefix}{}", s.step),
                detail: s.detail,
            }));
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Detail of the first step with this name.
    pub fn find(&self, step: &str) -> Option<&str> {
        self.steps
            .iter()
            .find(|s| s.step == step)
            .map(|s| s.detail.as_str())
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{}: {}", s.step, s.detail)?;
        }
        Ok(())
    }
}

/// `[[a, b], [c, c]]`, the list form of an isolation.
pub fn fmt_intervals(intervals: &[RationalInterval]) -> String {
    let parts: Vec<String> = intervals.iter().map(|iv| iv.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn fmt_isolation(iso: &RootIsolation) -> String {
    fmt_intervals(&iso.intervals)
}
