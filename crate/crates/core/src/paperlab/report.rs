use std::fmt;

use serde_json::{json, Map, Value};

use crate::models::{model_to_value, InfoModel, State};
use crate::semantics::{supports_with, Assignment, EvalConfig};
use crate::syntax::{print_formula, Formula};
use crate::Error;

/// A point where `formula` was predicted to have support verdict
/// `expected`. Re-checking it independently confirms a failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub model: InfoModel,
    pub state: State,
    pub assignment: Assignment,
    pub formula: Formula,
    pub expected: bool,
}

impl Witness {
    pub fn new(model: &InfoModel, state: State, formula: &Formula, expected: bool) -> Self {
        Witness { model: model.clone(), state, assignment: Assignment::new(), formula: formula.clone(), expected }
    }

    /// Whether uncached evaluation contradicts the prediction.
    pub fn confirms_failure(&self) -> Result<bool, Error> {
        let actual = supports_with(&self.model, self.state, &self.assignment, &self.formula, &EvalConfig::naive())?;
        Ok(actual != self.expected)
    }

    fn to_value(&self) -> Value {
        json!({
            "model": model_to_value(&self.model),
            "state": self.state.worlds().map(|w| self.model.world_names()[w].clone()).collect::<Vec<_>>(),
            "assignment": self.assignment.to_names(&self.model),
            "formula": print_formula(&self.formula),
            "expected": self.expected,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub label: String,
    pub passed: bool,
    /// Present on failures.
    pub witness: Option<Witness>,
}

/// Outcome of checking one property over many instances.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub lemma: String,
    pub parameters: Vec<(String, String)>,
    pub instances: Vec<Instance>,
}

impl LemmaReport {
    pub fn new(lemma: &str) -> Self {
        LemmaReport { lemma: lemma.to_owned(), parameters: Vec::new(), instances: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.push((key.to_owned(), value.to_string()));
        self
    }

    /// Records an instance; the witness is only built when it failed.
    pub fn check(&mut self, label: impl Into<String>, passed: bool, witness: impl FnOnce() -> Option<Witness>) {
        let witness = if passed { None } else { witness() };
        self.instances.push(Instance { label: label.into(), passed, witness });
    }

    pub fn total(&self) -> usize {
        self.instances.len()
    }

    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.total() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.passed)
    }

    /// Whether every failure's witness independently confirms it.
    pub fn reverify(&self) -> Result<bool, Error> {
        for inst in self.failures() {
            match &inst.witness {
                Some(w) if w.confirms_failure()? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// JSON form; individual passing instances are listed only if asked.
    pub fn to_value(&self, with_instances: bool) -> Value {
        let params: Map<String, Value> = self.parameters.iter().map(|(k, v)| (k.clone(), Value::from(v.clone()))).collect();
        let failures: Vec<Value> = self
            .failures()
            .map(|i| json!({ "label": i.label, "witness": i.witness.as_ref().map(Witness::to_value) }))
            .collect();
        let mut out = json!({
            "lemma": self.lemma,
            "parameters": params,
            "total": self.total(),
            "passed": self.passed(),
            "failed": self.failed(),
            "failures": failures,
        });
        if with_instances {
            out["instances"] = self.instances.iter().map(|i| json!({ "label": i.label, "passed": i.passed })).collect();
        }
        out
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = if self.all_passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<24} {:>6}/{:<6} {}", self.lemma, self.passed(), self.total(), params.join(" "))
    }
}
