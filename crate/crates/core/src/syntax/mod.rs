//! Formulas of inquisitive first-order logic: signatures, terms, the
//! primitive syntax tree, derived operators, and the ASCII grammar.
//!
//! | text | meaning |
//! |------|---------|
//! | `_\|_` | falsum |
//! | `φ & ψ` | conjunction |
//! | `φ V ψ` | inquisitive disjunction |
//! | `φ -> ψ` | implication (right-associative) |
//! | `forall x. φ` / `iexists x. φ` | universal / inquisitive existential |
//! | `~φ`, `?φ`, `φ \/ ψ`, `exists x. φ`, `t != t'` | derived, expanded on parse |
//! | `lam(t)`, `mu(t)`, `dep(t1,...,tn; t')` | identification questions and dependence |
//!
//! `~` and `?` bind tightest, then `&`, then `V` and `\/`, then `->`.
//! A quantifier body extends as far to the right as possible.

mod ast;
mod derived;
mod parser;
mod printer;
mod signature;

pub use ast::{Formula, FormulaKind, Span, Term};
pub use derived::{fresh_var, Derived};
pub use parser::{infer_signature, parse_formula, parse_formula_with, parse_term, FreeVarPolicy, ParseOptions};
pub use printer::{print_formula, print_term};
pub use signature::{FunctionSymbol, PredicateSymbol, Signature, SignatureBuilder, Symbol, KEYWORDS};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("unexpected character {found:?} at {span}")]
    Lexical { found: char, span: Span },
    #[error("expected {expected}, found {found} at {span}")]
    Unexpected { expected: String, found: String, span: Span },
    #[error("unknown symbol `{name}` at {span}")]
    UnknownSymbol { name: String, span: Span },
    #[error("`{name}` takes {expected} argument(s) but {found} were given at {span}")]
    Arity { name: String, expected: usize, found: usize, span: Span },
    #[error("variable `{name}` is not bound by any quantifier at {span}")]
    FreeVariable { name: String, span: Span },
    #[error("`{name}` is a declared symbol and cannot be bound as a variable at {span}")]
    SymbolAsVariable { name: String, span: Span },
    #[error("predicate `{name}` used as a term at {span}")]
    PredicateAsTerm { name: String, span: Span },
    #[error("symbol `{name}` is declared more than once")]
    DuplicateSymbol { name: String },
    #[error("`{name}` is not a valid symbol name")]
    InvalidSymbolName { name: String },
}

impl SyntaxError {
    pub fn span(&self) -> Option<Span> {
        match self {
            SyntaxError::Lexical { span, .. }
            | SyntaxError::Unexpected { span, .. }
            | SyntaxError::UnknownSymbol { span, .. }
            | SyntaxError::Arity { span, .. }
            | SyntaxError::FreeVariable { span, .. }
            | SyntaxError::SymbolAsVariable { span, .. }
            | SyntaxError::PredicateAsTerm { span, .. } => Some(*span),
            SyntaxError::DuplicateSymbol { .. } | SyntaxError::InvalidSymbolName { .. } => None,
        }
    }
}

/// Checks that every symbol in `f` is declared in `sig` with the arity used.
pub fn check_formula(f: &Formula, sig: &Signature) -> Result<(), SyntaxError> {
    fn check_term(t: &Term, sig: &Signature) -> Result<(), SyntaxError> {
        let fake = Span::new(0, 0);
        match t {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => match sig.lookup(name) {
                Some(Symbol::Function(i)) => {
                    let expected = sig.functions()[i].arity;
                    if expected != args.len() {
                        return Err(SyntaxError::Arity { name: name.clone(), expected, found: args.len(), span: fake });
                    }
                    args.iter().try_for_each(|a| check_term(a, sig))
                }
                Some(Symbol::Predicate(_)) => Err(SyntaxError::PredicateAsTerm { name: name.clone(), span: fake }),
                None => Err(SyntaxError::UnknownSymbol { name: name.clone(), span: fake }),
            },
        }
    }
    let mut result = Ok(());
    f.walk(&mut |node| {
        if result.is_err() {
            return;
        }
        let span = node.span.unwrap_or(Span::new(0, 0));
        result = match &node.kind {
            FormulaKind::Atom(p, args) => match sig.lookup(p) {
                Some(Symbol::Predicate(i)) => {
                    let expected = sig.predicates()[i].arity;
                    if expected != args.len() {
                        Err(SyntaxError::Arity { name: p.clone(), expected, found: args.len(), span })
                    } else {
                        args.iter().try_for_each(|a| check_term(a, sig))
                    }
                }
                _ => Err(SyntaxError::UnknownSymbol { name: p.clone(), span }),
            },
            FormulaKind::Equals(l, r) => check_term(l, sig).and_then(|_| check_term(r, sig)),
            FormulaKind::Forall(x, _) | FormulaKind::InqExists(x, _) if sig.contains(x) => {
                Err(SyntaxError::SymbolAsVariable { name: x.clone(), span })
            }
            _ => Ok(()),
        };
    });
    result
}
