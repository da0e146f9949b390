use std::collections::BTreeSet;

use crate::models::{enumerate_structures, Structure};
use crate::semantics::{tarski_eval, Assignment};
use crate::syntax::{Formula, Signature};

use super::LogicError;

/// A finite structure and assignment satisfying the premises but not the
/// conclusion, in classical first-order semantics.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterstructure {
    pub structure: Structure,
    pub assignment: Assignment,
}

/// First counterstructure with at most `max_domain` elements, smallest
/// domain first. All formulas must be classical.
pub fn fol_countermodel(
    sig: &Signature,
    premises: &[Formula],
    conclusion: &Formula,
    max_domain: usize,
    limit: u64,
) -> Result<Option<Counterstructure>, LogicError> {
    if max_domain == 0 {
        return Err(crate::models::ModelError::Bounds.into());
    }
    let all: Vec<&Formula> = premises.iter().chain([conclusion]).collect();
    if all.iter().any(|f| !f.is_classical()) {
        return Err(crate::semantics::EvalError::NotClassical.into());
    }
    let vars: Vec<String> = all.iter().flat_map(|f| f.free_vars()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut names = Vec::new();
    for f in &all {
        names.extend(f.symbols());
    }
    let sig = sig.restrict(&names);
    for s in enumerate_structures(&sig, max_domain, limit)? {
        for g in Assignment::all(&vars, s.domain_size()) {
            let mut ok = true;
            for p in premises {
                if !tarski_eval(&s, &g, p)? {
                    ok = false;
                    break;
                }
            }
            if ok && !tarski_eval(&s, &g, conclusion)? {
                return Ok(Some(Counterstructure { structure: s, assignment: g }));
            }
        }
    }
    Ok(None)
}
