use serde::Serialize;
use serde_json::Value;

/// Outcome of checking an identity over a set of pairs.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub condition: String,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
    /// Set when a hypothesis failed and the conclusion was therefore not tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Violation {
    #[serde(rename = "E")]
    pub e: Value,
    #[serde(rename = "F")]
    pub f: Value,
    pub lhs: Value,
    pub rhs: Value,
}

impl Report {
    pub fn new(condition: impl Into<String>) -> Self {
        Self {
            condition: condition.into(),
            pairs_checked: 0,
            violations: Vec::new(),
            hypothesis_failure: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one checked case, and a violation if `lhs != rhs`.
    pub fn check<T: PartialEq + Serialize>(&mut self, e: impl Serialize, f: impl Serialize, lhs: &T, rhs: &T) {
        self.pairs_checked += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                e: to_value(e),
                f: to_value(f),
                lhs: to_value(lhs),
                rhs: to_value(rhs),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.hypothesis_failure.is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}
