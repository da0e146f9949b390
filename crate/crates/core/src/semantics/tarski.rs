//! Standard first-order satisfaction over a single structure.
//!
//! Written directly against names and the formula tree, independently of
//! the support evaluator, so the two can be checked against each other.

use std::collections::HashMap;

use crate::models::Structure;
use crate::syntax::{Formula, FormulaKind, Term};

use super::{Assignment, EvalError};

/// `S ⊨_g α` for a classical formula `α`.
pub fn tarski_eval(s: &Structure, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    if !f.is_classical() {
        return Err(EvalError::NotClassical);
    }
    let mut env: HashMap<String, usize> = g.iter().map(|(x, d)| (x.to_owned(), d)).collect();
    sat(s, &mut env, f)
}

fn value(s: &Structure, env: &HashMap<String, usize>, t: &Term) -> Result<usize, EvalError> {
    match t {
        Term::Var(x) => env.get(x).copied().ok_or_else(|| EvalError::UnboundVariable(x.clone())),
        Term::App(f, args) => {
            let vals = args.iter().map(|a| value(s, env, a)).collect::<Result<Vec<_>, _>>()?;
            s.apply(f, &vals).ok_or_else(|| EvalError::UnknownSymbol(f.clone()))
        }
    }
}

fn sat(s: &Structure, env: &mut HashMap<String, usize>, f: &Formula) -> Result<bool, EvalError> {
    Ok(match &f.kind {
        FormulaKind::Atom(p, args) => {
            let vals = args.iter().map(|a| value(s, env, a)).collect::<Result<Vec<_>, _>>()?;
            let i = s.signature().predicate_index(p).ok_or_else(|| EvalError::UnknownSymbol(p.clone()))?;
            s.interpretation().predicate(i).contains(&vals, s.domain_size())
        }
        FormulaKind::Equals(l, r) => value(s, env, l)? == value(s, env, r)?,
        FormulaKind::Bottom => false,
        FormulaKind::And(a, b) => sat(s, env, a)? && sat(s, env, b)?,
        FormulaKind::Implies(a, b) => !sat(s, env, a)? || sat(s, env, b)?,
        FormulaKind::Forall(x, body) => {
            let saved = env.get(x).copied();
            let mut all = true;
            for d in 0..s.domain_size() {
                env.insert(x.clone(), d);
                if !sat(s, env, body)? {
                    all = false;
                    break;
                }
            }
            match saved {
                Some(d) => env.insert(x.clone(), d),
                None => env.remove(x),
            };
            all
        }
        FormulaKind::InqDisj(..) | FormulaKind::InqExists(..) => return Err(EvalError::NotClassical),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::StructureBuilder;
    use crate::syntax::{parse_formula, Signature};

    #[test]
    fn basic_satisfaction() {
        let sig = Signature::builder().predicate("P", 1).build().unwrap();
        let empty = StructureBuilder::new(&sig, 2).build().unwrap();
        let g = Assignment::new();
        let some = parse_formula("exists x. P(x)", &sig).unwrap();
        assert!(!tarski_eval(&empty, &g, &some).unwrap());
        let distinct = parse_formula("exists x. exists y. x != y", &sig).unwrap();
        assert!(tarski_eval(&empty, &g, &distinct).unwrap());
        let one = StructureBuilder::new(&sig, 1).build().unwrap();
        assert!(!tarski_eval(&one, &g, &distinct).unwrap());
    }

    #[test]
    fn rejects_inquisitive_input() {
        let sig = Signature::builder().predicate("P", 1).build().unwrap();
        let s = StructureBuilder::new(&sig, 1).build().unwrap();
        let f = parse_formula("iexists x. P(x)", &sig).unwrap();
        assert!(matches!(tarski_eval(&s, &Assignment::new(), &f), Err(EvalError::NotClassical)));
    }
}
