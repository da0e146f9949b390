//! The support relation `M, s ⊨_g φ`, truth at worlds, and a classical
//! Tarskian evaluator.
//!
//! [`Evaluator`] compiles a formula against a model once and then answers
//! support queries for any state and assignment. Three strategies are
//! available (see [`Strategy`]); they are interchangeable and tested against
//! each other. [`tarski_eval`] shares no code with them.

mod assignment;
mod compile;
mod eval;
mod stateset;
mod tarski;

pub use assignment::{denote_term, Assignment};
pub use eval::{
    check_truth_conditional, support_set, supports, supports_with, truth_at, EvalConfig, Evaluator, Strategy,
    AUTO_LATTICE_WORLDS, DEFAULT_BUDGET,
};
pub use stateset::{StateSet, MAX_LATTICE_WORLDS};
pub use tarski::tarski_eval;

use thiserror::Error;

use crate::models::{ModelError, State};
use crate::syntax::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("variable `{var}` is assigned {value}, outside the domain")]
    ElementOutOfRange { var: String, value: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("state {0} mentions worlds the model does not have")]
    InvalidState(State),
    #[error("evaluation budget exhausted after {steps} steps (limit {limit})")]
    Budget { steps: u64, limit: u64 },
    #[error("formula is not classical")]
    NotClassical,
    #[error("too many free variables for the domain size")]
    TooManyVariables,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
