//! Entailment, validity and equivalence by bounded countermodel search.
//!
//! Candidate models are enumerated smallest first (domain size, then number
//! of worlds, then tables); every state and every assignment to the free
//! variables is tried. A returned countermodel has been re-checked with the
//! uncached evaluator. [`Verdict::ExhaustedBounds`] is a statement about
//! the bounds only.

mod fol;
mod search;
mod verdict;

pub use fol::{fol_countermodel, Counterstructure};
pub use search::{entails, equivalent, id_entails_via_translation, rigid_equality, valid, SearchConfig};
pub use verdict::{state_from_names, Countermodel, Verdict};

use thiserror::Error;

use crate::models::ModelError;
use crate::semantics::EvalError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("countermodel failed re-verification: {0}")]
    Unverified(String),
    #[error("cannot start workers: {0}")]
    Workers(String),
    #[error("verdict file: {0}")]
    Format(String),
}
