//! Structured verdicts produced by every checker in the crate.

use std::fmt;

/// A single violated law together with the first witnessing assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<(String, String)>,
}

impl Violation {
    pub fn new(law: impl Into<String>, witness: Vec<(String, String)>) -> Self {
        Violation { law: law.into(), witness }
    }
}

/// How the assignments of a report were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Exhaustive,
    /// Some laws were evaluated on generator tuples plus `samples` seeded
    /// random assignments.
    Sampled { samples: usize },
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalMode::Exhaustive => f.write_str("exhaustive"),
            EvalMode::Sampled { samples } => write!(f, "sampled({samples})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub laws: usize,
    pub assignments: u64,
    pub violations: Vec<Violation>,
    /// Internal-consistency alarms: a result that a theorem guarantees did not
    /// materialise. These are never expected.
    pub alarms: Vec<String>,
    /// Informational facts (e.g. `surjective=true`).
    pub facts: Vec<(String, String)>,
    pub mode: EvalMode,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            laws: 0,
            assignments: 0,
            violations: Vec::new(),
            alarms: Vec::new(),
            facts: Vec::new(),
            mode: EvalMode::Exhaustive,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_alarm(&self) -> bool {
        !self.alarms.is_empty()
    }

    /// Records one law: `assignments` evaluated, `witness` set when violated.
    pub fn record(&mut self, law: &str, assignments: u64, witness: Option<Vec<(String, String)>>) {
        self.laws += 1;
        self.assignments += assignments;
        if let Some(w) = witness {
            self.violations.push(Violation::new(law, w));
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }

    pub fn fact_value(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn violated(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    /// Appends the laws of `other` under this report, keeping their order.
    pub fn absorb(&mut self, other: CheckReport) {
        self.laws += other.laws;
        self.assignments += other.assignments;
        self.violations.extend(other.violations);
        self.alarms.extend(other.alarms);
        self.facts.extend(other.facts);
        if let EvalMode::Sampled { samples } = other.mode {
            self.mode = match self.mode {
                EvalMode::Exhaustive => EvalMode::Sampled { samples },
                EvalMode::Sampled { samples: s } => EvalMode::Sampled { samples: s.max(samples) },
            };
        }
    }
}

/// Outcome of one representation-theorem roundtrip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityRoundtripReport {
    pub name: String,
    pub embedding: CheckReport,
    /// The embedding is onto (informational only).
    pub iso: bool,
    /// Sizes of the source, the intermediate structure and the target.
    pub sizes: Vec<(String, usize)>,
}

impl DualityRoundtripReport {
    pub fn passed(&self) -> bool {
        self.embedding.passed()
    }
}
