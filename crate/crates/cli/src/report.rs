use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One named check. `failure` and `witness` describe the first violation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Scenario,
    pub checks: Vec<Check>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(scenario: Scenario, checks: Vec<Check>, elapsed_ms: Option<u64>) -> Self {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        Report {
            scenario,
            checks,
            status,
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every timing field removed; identical inputs give identical bytes.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = None;
        for c in &mut r.checks {
            c.elapsed_ms = None;
        }
        r.to_json()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.scenario.kind)?;
        for c in &self.checks {
            match c.elapsed_ms {
                Some(ms) => writeln!(f, "[{}] {} ({ms} ms)", c.status, c.name)?,
                None => writeln!(f, "[{}] {}", c.status, c.name)?,
            }
            for d in &c.details {
                writeln!(f, "    {d}")?;
            }
            if let Some(msg) = &c.failure {
                writeln!(f, "    failure: {msg}")?;
            }
        }
        write!(f, "overall: {}", self.status)
    }
}

pub(crate) type CheckResult = Result<(), Box<dyn std::error::Error>>;

/// Accumulates details for a check; only the first failure is kept.
pub(crate) struct Probe {
    name: String,
    details: Vec<String>,
    failure: Option<(String, Value)>,
    skipped: bool,
}

impl Probe {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Probe {
            name: name.into(),
            details: Vec::new(),
            failure: None,
            skipped: false,
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    pub(crate) fn fail(&mut self, msg: impl Into<String>, witness: Value) {
        if self.failure.is_none() {
            self.failure = Some((msg.into(), witness));
        }
    }

    pub(crate) fn skip(&mut self, reason: impl Into<String>) {
        self.skipped = true;
        self.note(reason);
    }

    /// Runs `body`, converting library errors into a failure, and times it.
    pub(crate) fn run(mut self, body: impl FnOnce(&mut Probe) -> CheckResult) -> Check {
        let start = Instant::now();
        if let Err(e) = body(&mut self) {
            self.fail(format!("error: {e}"), Value::Null);
        }
        let elapsed = start.elapsed().as_millis() as u64;
        let (failure, witness) = match self.failure {
            Some((m, w)) => (Some(m), w),
            None => (None, Value::Null),
        };
        let status = if failure.is_some() {
            Status::Fail
        } else if self.skipped {
            Status::Skip
        } else {
            Status::Pass
        };
        Check {
            name: self.name,
            status,
            details: self.details,
            failure,
            witness,
            elapsed_ms: Some(elapsed),
        }
    }
}
