//! Verification verdicts and reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Outcome of checking one identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Verdict {
    pub fn pass(identity: impl Into<String>) -> Self {
        Verdict {
            identity: identity.into(),
            passed: true,
            counterexample: None,
        }
    }

    pub fn fail(identity: impl Into<String>, counterexample: Value) -> Self {
        Verdict {
            identity: identity.into(),
            passed: false,
            counterexample: Some(counterexample),
        }
    }

    /// Passes when `failure` is `None`, otherwise carries it as the payload.
    pub fn from_check(identity: impl Into<String>, failure: Option<Value>) -> Self {
        match failure {
            None => Self::pass(identity),
            Some(c) => Self::fail(identity, c),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            parameters: BTreeMap::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, vs: impl IntoIterator<Item = Verdict>) {
        self.verdicts.extend(vs);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }

    /// Runs `body` and records its wall time.
    pub fn timed(mut self, body: impl FnOnce(&mut Self)) -> Self {
        let start = Instant::now();
        body(&mut self);
        self.wall_time_ms = start.elapsed().as_millis();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_aggregates_verdicts() {
        let r = VerificationReport::new("demo").param("n", 3).timed(|r| {
            r.push(Verdict::pass("a"));
            r.push(Verdict::from_check("b", Some(Value::from("x"))));
        });
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["parameters"]["n"], 3);
        assert_eq!(json["verdicts"][1]["counterexample"], "x");
    }
}
