//! Serializable certificates. Every lemma-level check emits one; sweeps
//! persist them as JSON, and `replay` re-runs the recorded checks.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

/// Outcome of a certified check. `Inconclusive` is a first-class verdict:
/// bounded factoring effort or exhausted precision, never silently dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Excluded,
    Rejected,
    Inconclusive,
}

/// One verified condition inside a certificate, with the evidence that was
/// checked and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// A replayable record of one lemma-level claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Stable claim identifier, e.g. "prime-power-exclusion/b".
    pub claim: String,
    /// Module that produced it.
    pub module: String,
    /// Input values, stringified exactly.
    pub inputs: BTreeMap<String, String>,
    /// Parameters the check ran with.
    pub parameters: BTreeMap<String, Value>,
    /// Conditions checked, in order.
    pub conditions: Vec<Condition>,
    pub verdict: Verdict,
    /// External theorems consumed as axioms, named explicitly.
    pub assumptions: Vec<String>,
    /// Rule/step trace for replay.
    pub trace: Vec<String>,
}

impl Certificate {
    pub fn new(claim: &str, module: &str) -> Self {
        Certificate {
            claim: claim.to_string(),
            module: module.to_string(),
            inputs: BTreeMap::new(),
            parameters: BTreeMap::new(),
            conditions: Vec::new(),
            verdict: Verdict::Inconclusive,
            assumptions: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn condition(&mut self, name: &str, holds: bool, detail: impl ToString) {
        self.conditions.push(Condition {
            name: name.to_string(),
            holds,
            detail: detail.to_string(),
        });
    }

    pub fn assume(&mut self, note: &str) {
        self.assumptions.push(note.to_string());
    }

    pub fn step(&mut self, line: impl ToString) {
        self.trace.push(line.to_string());
    }

    /// All recorded conditions hold.
    pub fn all_conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> crate::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut c = Certificate::new("test/claim", "cert").input("c", 85).param("bits", 128);
        c.condition("parity", true, "u even");
        c.assume("external: none");
        c.step("checked parity");
        c.verdict = Verdict::Verified;
        let s = c.to_json().unwrap();
        let back = Certificate::from_json(&s).unwrap();
        assert_eq!(c, back);
    }
}
