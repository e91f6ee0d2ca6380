use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Witnesses kept per clause; further failures are only counted.
pub const WITNESS_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub clause: String,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseTally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Value,
    pub cases: u64,
    pub clauses: BTreeMap<String, ClauseTally>,
    pub failures: Vec<Failure>,
    /// Wall time; the only field that varies between identical runs.
    pub millis: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_checks(&self) -> u64 {
        self.clauses.values().map(|t| t.failed).sum()
    }

    pub fn clause(&self, name: &str) -> ClauseTally {
        self.clauses.get(name).copied().unwrap_or_default()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} checks, {} failed, {} ms)",
            self.suite,
            if self.passed() { "ok" } else { "FAILED" },
            self.cases,
            self.failed_checks(),
            self.millis
        )?;
        for (name, t) in &self.clauses {
            writeln!(f, "  {name}: {}/{} ok", t.checked - t.failed, t.checked)?;
        }
        for w in &self.failures {
            writeln!(
                f,
                "  witness [{}] inputs={} lhs={} rhs={}",
                w.clause, w.inputs, w.lhs, w.rhs
            )?;
        }
        Ok(())
    }
}

/// Outcome of several suites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        Report {
            passed: suites.iter().all(SuiteReport::passed),
            suites,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// The report without timings; identical for identical configurations.
    pub fn body_json(&self) -> serde_json::Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(suites) = v.get_mut("suites").and_then(Value::as_array_mut) {
            for s in suites {
                if let Some(obj) = s.as_object_mut() {
                    obj.remove("millis");
                }
            }
        }
        serde_json::to_string_pretty(&v)
    }
}

/// Accumulates clause tallies and witnesses. Partial checkers from parallel
/// workers are merged in input order, so the result is deterministic.
#[derive(Debug, Default)]
pub(crate) struct Checker {
    clauses: BTreeMap<String, ClauseTally>,
    failures: Vec<Failure>,
}

impl Checker {
    pub fn check(&mut self, clause: &str, ok: bool, witness: impl FnOnce() -> (Value, Value, Value)) {
        let tally = self.clauses.entry(clause.to_string()).or_default();
        tally.checked += 1;
        if !ok {
            tally.failed += 1;
            if tally.failed as usize <= WITNESS_LIMIT {
                let (inputs, lhs, rhs) = witness();
                self.failures.push(Failure {
                    clause: clause.to_string(),
                    inputs,
                    lhs,
                    rhs,
                });
            }
        }
    }

    pub fn check_eq<T: PartialEq + Serialize>(
        &mut self,
        clause: &str,
        lhs: T,
        rhs: T,
        inputs: impl FnOnce() -> Value,
    ) {
        let ok = lhs == rhs;
        self.check(clause, ok, || (inputs(), to_value(&lhs), to_value(&rhs)));
    }

    pub fn merge(&mut self, other: Checker) {
        for (name, t) in other.clauses {
            let mine = self.clauses.entry(name.clone()).or_default();
            let room = WITNESS_LIMIT.saturating_sub(mine.failed as usize);
            mine.checked += t.checked;
            mine.failed += t.failed;
            self.failures.extend(
                other
                    .failures
                    .iter()
                    .filter(|f| f.clause == name)
                    .take(room)
                    .cloned(),
            );
        }
    }

    pub fn finish(self, suite: &str, params: Value, millis: u64) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            params,
            cases: self.clauses.values().map(|t| t.checked).sum(),
            clauses: self.clauses,
            failures: self.failures,
            millis,
        }
    }
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("<unserializable: {e}>")))
}

/// Ok values serialize as themselves, errors as their message.
pub(crate) fn outcome<T: Serialize, E: fmt::Display>(r: &Result<T, E>) -> Value {
    match r {
        Ok(v) => to_value(v),
        Err(e) => Value::String(format!("error: {e}")),
    }
}
