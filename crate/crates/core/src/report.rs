//! Outcomes of law suites as plain values, shared by the library, tests and CLI.

use std::fmt::Write as _;

use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::contract::Contract;
use crate::boolalg::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Named values that make a law fail, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness(Vec<(String, String)>);

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: impl Into<String>) -> Self {
        self.0.push((name.to_owned(), value.into()));
        self
    }

    pub fn contract(self, name: &str, c: &Contract) -> Self {
        self.with(name, format!("{c:?}"))
    }

    pub fn element(self, name: &str, e: &Element) -> Self {
        self.with(name, format!("{{{}}}", e.to_dnf()))
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.0
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub instances: u64,
    /// Outcome the suite requires; not serialized per law.
    pub expected: Status,
}

impl LawResult {
    pub fn as_expected(&self) -> bool {
        self.status == self.expected
    }
}

impl Serialize for LawResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LawResult", 4)?;
        s.serialize_field("law", &self.law)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("witness", &self.witness)?;
        s.serialize_field("instances", &self.instances)?;
        s.end()
    }
}

/// Accumulates instances of one law. Keeps the first failing witness and the
/// number of failing instances.
#[derive(Debug)]
pub struct LawCheck {
    law: String,
    instances: u64,
    failures: u64,
    witness: Option<Witness>,
}

impl LawCheck {
    pub fn new(law: impl Into<String>) -> Self {
        LawCheck {
            law: law.into(),
            instances: 0,
            failures: 0,
            witness: None,
        }
    }

    pub fn record(&mut self, holds: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !holds {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Marks the law failed without counting an instance.
    pub fn fail_with(&mut self, witness: Witness) {
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn finish(self, expected: Status) -> LawResult {
        let status = if self.failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        let witness = self.witness.map(|w| {
            if self.instances > 0 {
                w.with(
                    "failing_instances",
                    format!("{} of {}", self.failures, self.instances),
                )
            } else {
                w
            }
        });
        LawResult {
            law: self.law,
            status,
            witness,
            instances: self.instances,
            expected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub atoms: usize,
    pub laws: Vec<LawResult>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, atoms: usize) -> Self {
        SuiteReport {
            suite: suite.into(),
            atoms,
            laws: Vec::new(),
        }
    }

    pub fn push(&mut self, law: LawResult) {
        self.laws.push(law);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.laws.extend(other.laws);
    }

    /// True when every law has its expected outcome.
    pub fn ok(&self) -> bool {
        self.laws.iter().all(LawResult::as_expected)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn passed(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| l.status == Status::Pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} ({} atoms)\n", self.suite, self.atoms);
        for law in &self.laws {
            let tag = match (law.status, law.as_expected()) {
                (Status::Pass, true) => "PASS ",
                (Status::Fail, true) => "XFAIL",
                (Status::Pass, false) => "XPASS",
                (Status::Fail, false) => "FAIL ",
            };
            let _ = write!(out, "  {tag} {} [{} instances]", law.law, law.instances);
            if let Some(w) = &law.witness {
                let parts: Vec<String> = w.0.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let _ = write!(out, "  witness: {}", parts.join(", "));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "  {} laws, {} as expected: {}",
            self.laws.len(),
            self.laws.iter().filter(|l| l.as_expected()).count(),
            if self.ok() { "ok" } else { "NOT OK" }
        );
        out
    }
}

impl Serialize for SuiteReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let expected_failures: Vec<&str> = self
            .laws
            .iter()
            .filter(|l| l.expected == Status::Fail)
            .map(|l| l.law.as_str())
            .collect();
        let mut s = serializer.serialize_struct("SuiteReport", 5)?;
        s.serialize_field("suite", &self.suite)?;
        s.serialize_field("atoms", &self.atoms)?;
        s.serialize_field("ok", &self.ok())?;
        s.serialize_field("expected_failures", &expected_failures)?;
        s.serialize_field("laws", &self.laws)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_json_has_the_fixed_key_order() {
        let mut check = LawCheck::new("x = x");
        check.record(true, Witness::new);
        check.record(false, || Witness::new().with("C", "(x, y)"));
        check.record(false, || unreachable!("only the first witness is built"));
        let law = check.finish(Status::Pass);
        assert_eq!(
            serde_json::to_string(&law).unwrap(),
            r#"{"law":"x = x","status":"fail","witness":{"C":"(x, y)","failing_instances":"2 of 3"},"instances":3}"#
        );
        assert!(!law.as_expected());
    }

    #[test]
    fn suite_ok_tracks_expectations() {
        let mut report = SuiteReport::new("demo", 1);
        let mut bad = LawCheck::new("bad");
        bad.record(false, Witness::new);
        report.push(bad.finish(Status::Fail));
        let mut good = LawCheck::new("good");
        good.record(true, Witness::new);
        report.push(good.finish(Status::Pass));
        assert!(report.ok());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["expected_failures"], serde_json::json!(["bad"]));
        assert_eq!(json["laws"][1]["witness"], serde_json::Value::Null);
        assert!(report.to_text().contains("XFAIL bad"));
    }
}
