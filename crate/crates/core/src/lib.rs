//! Model checking for inquisitive first-order logic.
//!
//! Formulas are evaluated by *support* at information states (sets of
//! worlds) of finite first-order information models. On top of the
//! evaluator sit bounded countermodel search for entailment, validity and
//! equivalence, and a set of finite-scale checks of known properties of
//! the logic.
//!
//! ```
//! use inqbq::models::{canonical_full_model, State};
//! use inqbq::semantics::{supports, Assignment};
//! use inqbq::syntax::{parse_formula, Signature};
//!
//! let m = canonical_full_model(2)?;
//! let dep = parse_formula("dep(a; b)", &Signature::two_constants())?;
//! let g = Assignment::new();
//! // b is not determined by a across all four worlds...
//! assert!(!supports(&m, m.full_state(), &g, &dep)?);
//! // ...but it is on the diagonal
//! assert!(supports(&m, State::from_worlds([0, 3]), &g, &dep)?);
//! # Ok::<(), inqbq::Error>(())
//! ```
//!
//! | module | contents |
//! |--------|----------|
//! | [`syntax`] | signatures, terms, formulas, parser and printer |
//! | [`models`] | information models, states, structures, canonical constructions, enumeration |
//! | [`semantics`] | support, truth, Tarskian evaluation |
//! | [`logic`] | entailment, validity and equivalence search |
//! | [`paperlab`] | key sentences and finite verification reports |
//! | [`corpus`] | seeded generators of models and formulas |

pub mod corpus;
pub mod logic;
pub mod models;
pub mod paperlab;
pub mod semantics;
pub mod syntax;

use thiserror::Error;

/// Any error the library reports.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] syntax::SyntaxError),
    #[error(transparent)]
    Model(#[from] models::ModelError),
    #[error(transparent)]
    Eval(#[from] semantics::EvalError),
    #[error(transparent)]
    Logic(#[from] logic::LogicError),
    #[error("{0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

impl Error {
    /// Whether the error is a budget or size limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        use logic::LogicError as L;
        use models::ModelError as M;
        use semantics::EvalError as E;
        matches!(
            self,
            Error::Resource(_)
                | Error::Model(M::Budget { .. })
                | Error::Eval(E::Budget { .. })
                | Error::Logic(L::Eval(E::Budget { .. }))
                | Error::Logic(L::Model(M::Budget { .. }))
        )
    }
}
