use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::models::InfoModel;
use crate::syntax::Term;

use super::EvalError;

/// Values of variables, as domain indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(BTreeMap<String, usize>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn set(&mut self, var: &str, d: usize) {
        self.0.insert(var.to_owned(), d);
    }

    /// `g[x ↦ d]`.
    pub fn with(&self, var: &str, d: usize) -> Self {
        let mut g = self.clone();
        g.set(var, d);
        g
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every assignment of `vars` to `0..n`, first variable slowest.
    pub fn all(vars: &[String], n: usize) -> impl Iterator<Item = Assignment> + '_ {
        let total = n.checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut i| {
            let mut g = Assignment::new();
            for x in vars.iter().rev() {
                g.set(x, i % n);
                i /= n;
            }
            g
        })
    }

    /// Reads an assignment whose values are element names of `m`.
    pub fn from_names(names: &BTreeMap<String, String>, m: &InfoModel) -> Result<Self, EvalError> {
        let mut g = Assignment::new();
        for (x, d) in names {
            let i = m.element_index(d).ok_or_else(|| EvalError::UnknownElement(d.clone()))?;
            g.set(x, i);
        }
        Ok(g)
    }

    pub fn to_names(&self, m: &InfoModel) -> BTreeMap<String, String> {
        self.0.iter().map(|(x, &d)| (x.clone(), m.domain_names()[d].clone())).collect()
    }
}

impl FromIterator<(String, usize)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (String, usize)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, d)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{d}")?;
        }
        f.write_str("]")
    }
}

/// `[t]_w^g`.
pub fn denote_term(m: &InfoModel, w: usize, g: &Assignment, t: &Term) -> Result<usize, EvalError> {
    match t {
        Term::Var(x) => g.get(x).ok_or_else(|| EvalError::UnboundVariable(x.clone())),
        Term::App(f, args) => {
            let i = m.signature().function_index(f).ok_or_else(|| EvalError::UnknownSymbol(f.clone()))?;
            let vals = args.iter().map(|a| denote_term(m, w, g, a)).collect::<Result<Vec<_>, _>>()?;
            let table = m.world(w).interpretation().function(i);
            if table.arity() != vals.len() {
                return Err(EvalError::UnknownSymbol(f.clone()));
            }
            Ok(table.apply(&vals, m.domain_size()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{canonical_full_model, pair_world, ModelBuilder};
    use crate::syntax::Signature;

    #[test]
    fn variables_and_constants() {
        let m = canonical_full_model(2).unwrap();
        let g = Assignment::new().with("x", 1);
        assert_eq!(denote_term(&m, 0, &g, &Term::var("x")).unwrap(), 1);
        assert_eq!(denote_term(&m, pair_world(0, 1, 2), &g, &Term::constant("a")).unwrap(), 0);
        assert!(matches!(denote_term(&m, 0, &g, &Term::var("y")), Err(EvalError::UnboundVariable(_))));
    }

    #[test]
    fn successor_of_a_constant() {
        let sig = Signature::builder().constant("a").function("f", 1, false).build().unwrap();
        let mut b = ModelBuilder::new(&sig, 1, 3);
        b.constant(0, "a", 2).unwrap();
        for d in 0..3 {
            b.function(0, "f", &[d], (d + 1) % 3).unwrap();
        }
        let m = b.build().unwrap();
        let t = Term::app("f", vec![Term::constant("a")]);
        assert_eq!(denote_term(&m, 0, &Assignment::new(), &t).unwrap(), 0);
    }

    #[test]
    fn all_assignments() {
        let vars = vec!["x".to_owned(), "y".to_owned()];
        let gs: Vec<Assignment> = Assignment::all(&vars, 2).collect();
        assert_eq!(gs.len(), 4);
        assert_eq!(gs[1], Assignment::new().with("x", 0).with("y", 1));
        assert_eq!(Assignment::all(&[], 3).count(), 1);
    }
}
