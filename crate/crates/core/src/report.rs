//! Verification outcomes shared by every identity battery.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Index of the failing sample within its identity.
    pub sample: usize,
    /// Seed that regenerates the failing sample, when it was randomly drawn.
    pub sample_seed: Option<u64>,
    pub inputs: Vec<NamedValue>,
    pub lhs: String,
    pub rhs: String,
}

/// Tally for one identity over a batch of samples. Only the first failure is kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub suite: String,
    pub identity: String,
    pub samples: usize,
    pub passed: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl IdentityCheck {
    pub fn new(suite: &str, identity: &str) -> Self {
        IdentityCheck {
            suite: suite.to_string(),
            identity: identity.to_string(),
            samples: 0,
            passed: 0,
            status: Status::Pass,
            note: None,
            counterexample: None,
        }
    }

    pub fn skipped(suite: &str, identity: &str, note: impl Into<String>) -> Self {
        IdentityCheck { status: Status::Skipped, note: Some(note.into()), ..Self::new(suite, identity) }
    }

    /// Records one sample. `failure` is only evaluated when `ok` is false.
    pub fn record(&mut self, ok: bool, failure: impl FnOnce(usize) -> Counterexample) {
        let index = self.samples;
        self.samples += 1;
        if ok {
            self.passed += 1;
        } else {
            self.status = Status::Fail;
            if self.counterexample.is_none() {
                self.counterexample = Some(failure(index));
            }
        }
    }

    /// Records `lhs == rhs`, rendering both sides and the inputs on failure.
    pub fn record_eq<T: PartialEq + fmt::Display>(
        &mut self,
        lhs: &T,
        rhs: &T,
        sample_seed: Option<u64>,
        inputs: impl FnOnce() -> Vec<NamedValue>,
    ) {
        let ok = lhs == rhs;
        self.record(ok, |sample| Counterexample {
            sample,
            sample_seed,
            inputs: inputs(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn named(name: &str, value: &impl fmt::Display) -> NamedValue {
    NamedValue { name: name.to_string(), value: value.to_string() }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, identity: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            write!(f, "[{tag}] {}/{} {}/{}", c.suite, c.identity, c.passed, c.samples)?;
            if let Some(note) = &c.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
            if let Some(cx) = &c.counterexample {
                write!(f, "    counterexample at sample {}", cx.sample)?;
                if let Some(seed) = cx.sample_seed {
                    write!(f, " (sample seed {seed})")?;
                }
                writeln!(f)?;
                for input in &cx.inputs {
                    writeln!(f, "      {} = {}", input.name, input.value)?;
                }
                writeln!(f, "      lhs = {}", cx.lhs)?;
                writeln!(f, "      rhs = {}", cx.rhs)?;
            }
        }
        Ok(())
    }
}
