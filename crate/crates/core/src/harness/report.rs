//! Check reports. Serialized through `serde_json::Value`, so object keys
//! come out sorted.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// A search bound was hit before the check could be decided.
    Inconclusive,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    /// A fixture that reproduces the failure when fed back to `replay`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Subcommand that replays the fixture, e.g. `monoid split`.
    pub replay: String,
    pub fixture: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: Value) -> Self {
        Check {
            name: name.into(),
            status,
            detail,
            counterexample: None,
        }
    }

    pub fn pass(name: impl Into<String>, detail: Value) -> Self {
        Check::new(name, Status::Pass, detail)
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: Value) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn with_counterexample(mut self, replay: &str, fixture: Value) -> Self {
        if self.status != Status::Pass {
            self.counterexample = Some(Counterexample {
                replay: replay.into(),
                fixture,
            });
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        let status = checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        Report {
            command: command.into(),
            status,
            checks,
        }
    }

    /// 0 when everything passed, 1 on a failure, 3 when only inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// One line per check for standard error.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "ok  ",
                Status::Inconclusive => "??  ",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag} {}\n", c.name));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.command,
            self.checks.len(),
            failed
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_is_the_worst_check() {
        let r = Report::new("x", vec![Check::pass("a", Value::Null)]);
        assert_eq!(r.exit_code(), 0);
        let r = Report::new(
            "x",
            vec![
                Check::new("a", Status::Inconclusive, Value::Null),
                Check::from_bool("b", false, Value::Null),
            ],
        );
        assert_eq!(r.exit_code(), 1);
        let r = Report::new("x", vec![Check::new("a", Status::Inconclusive, Value::Null)]);
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn keys_are_sorted() {
        let r = Report::new("x", vec![Check::from_bool("b", true, json!({"z": 1, "a": 2}))]);
        let s = r.to_json();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.find("\"checks\"").unwrap() < s.find("\"command\"").unwrap());
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn passing_checks_carry_no_counterexample() {
        let c = Check::pass("a", Value::Null).with_counterexample("monoid split", json!({}));
        assert!(c.counterexample.is_none());
    }
}
