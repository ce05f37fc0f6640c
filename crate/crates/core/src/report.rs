//! Itemized check results.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub details: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub quantities: BTreeMap<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, verdict: Verdict, details: impl Into<String>) {
        self.checks.push(Check { name: name.into(), verdict, details: details.into() });
    }

    /// Record a pass/fail check; `details` is only rendered on failure.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: impl FnOnce() -> String) {
        let details = if ok { String::new() } else { details() };
        self.push(name, Verdict::from_bool(ok), details);
    }

    /// Record a check from a list of failure messages (pass iff empty).
    pub fn check_all(&mut self, name: impl Into<String>, failures: Vec<String>) {
        let verdict = Verdict::from_bool(failures.is_empty());
        let details = summarize(&failures);
        self.push(name, verdict, details);
    }

    pub fn quantity(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.quantities.insert(key.into(), value.into());
    }

    /// Append another report's checks and quantities under `prefix/`, or
    /// unchanged when `prefix` is empty.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        let name = |n: String| if prefix.is_empty() { n } else { format!("{prefix}/{n}") };
        for c in other.checks {
            self.push(name(c.name), c.verdict, c.details);
        }
        for (k, v) in other.quantities {
            self.quantities.insert(name(k), v);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn any_inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Inconclusive)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// 0 when everything passes, 1 on any failure, 2 on inconclusive checks only.
    pub fn exit_code(&self) -> i32 {
        if self.any_fail() {
            1
        } else if self.any_inconclusive() {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{:>12}] {}", c.verdict.to_string(), c.name)?;
            if !c.details.is_empty() {
                write!(f, ": {}", c.details)?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.quantities {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

fn summarize(failures: &[String]) -> String {
    const SHOWN: usize = 5;
    let mut s = failures.iter().take(SHOWN).cloned().collect::<Vec<_>>().join("; ");
    if failures.len() > SHOWN {
        s.push_str(&format!("; ... {} more", failures.len() - SHOWN));
    }
    s
}
