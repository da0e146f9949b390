use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::models::{model_from_value, model_to_value, InfoModel, State};
use crate::semantics::Assignment;

use super::LogicError;

#[derive(Clone, Debug, PartialEq)]
pub struct Countermodel {
    pub model: InfoModel,
    pub state: State,
    pub assignment: Assignment,
    /// Candidates checked up to and including this one.
    pub models_examined: u64,
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Countermodel(Countermodel),
    /// No countermodel within the bounds. This says nothing about larger models.
    ExhaustedBounds { max_worlds: usize, max_domain: usize, models_examined: u64 },
}

impl Verdict {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, Verdict::Countermodel(_))
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Verdict::Countermodel(c) => Some(c),
            Verdict::ExhaustedBounds { .. } => None,
        }
    }

    pub fn models_examined(&self) -> u64 {
        match self {
            Verdict::Countermodel(c) => c.models_examined,
            Verdict::ExhaustedBounds { models_examined, .. } => *models_examined,
        }
    }

    /// `{"verdict": "countermodel", "model": {...}, "state": [...], "assignment": {...}}`
    /// or `{"verdict": "exhausted", "max_worlds": .., "max_domain": .., "models_examined": ..}`.
    /// The embedded model is a complete model file.
    pub fn to_value(&self) -> Value {
        match self {
            Verdict::Countermodel(c) => json!({
                "verdict": "countermodel",
                "model": model_to_value(&c.model),
                "state": c.state.worlds().map(|w| c.model.world_names()[w].clone()).collect::<Vec<_>>(),
                "assignment": c.assignment.to_names(&c.model),
                "models_examined": c.models_examined,
            }),
            Verdict::ExhaustedBounds { max_worlds, max_domain, models_examined } => json!({
                "verdict": "exhausted",
                "max_worlds": max_worlds,
                "max_domain": max_domain,
                "models_examined": models_examined,
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize")
    }

    pub fn from_value(v: &Value) -> Result<Verdict, LogicError> {
        let bad = |m: &str| LogicError::Format(m.to_owned());
        let count = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(|| bad(&format!("missing `{k}`")));
        match v.get("verdict").and_then(Value::as_str) {
            Some("exhausted") => Ok(Verdict::ExhaustedBounds {
                max_worlds: count("max_worlds")? as usize,
                max_domain: count("max_domain")? as usize,
                models_examined: count("models_examined")?,
            }),
            Some("countermodel") => {
                let model = model_from_value(v.get("model").ok_or_else(|| bad("missing `model`"))?, None)?;
                let state = state_from_names(&model, v.get("state").ok_or_else(|| bad("missing `state`"))?)?;
                let names: BTreeMap<String, String> = serde_json::from_value(v.get("assignment").cloned().unwrap_or(json!({})))
                    .map_err(|e| bad(&e.to_string()))?;
                let assignment = Assignment::from_names(&names, &model)?;
                Ok(Verdict::Countermodel(Countermodel {
                    model,
                    state,
                    assignment,
                    models_examined: v.get("models_examined").and_then(Value::as_u64).unwrap_or(0),
                }))
            }
            _ => Err(bad("`verdict` must be \"countermodel\" or \"exhausted\"")),
        }
    }

    pub fn from_json(text: &str) -> Result<Verdict, LogicError> {
        let v: Value = serde_json::from_str(text).map_err(|e| LogicError::Format(e.to_string()))?;
        Verdict::from_value(&v)
    }
}

/// A list of world names, or `"all"`.
pub fn state_from_names(m: &InfoModel, v: &Value) -> Result<State, LogicError> {
    if v.as_str() == Some("all") {
        return Ok(m.full_state());
    }
    let arr = v.as_array().ok_or_else(|| LogicError::Format("a state is a list of world names or \"all\"".into()))?;
    let mut s = State::EMPTY;
    for x in arr {
        let name = x.as_str().ok_or_else(|| LogicError::Format("world names must be strings".into()))?;
        let w = m.world_index(name).ok_or_else(|| crate::models::ModelError::UnknownWorld(name.to_owned()))?;
        s = s.union(State::singleton(w));
    }
    Ok(s)
}
