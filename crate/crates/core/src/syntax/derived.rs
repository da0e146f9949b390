//! Derived operators and their primitive expansions.
//!
//! Nothing here survives into the stored syntax tree: every derived form is
//! expanded when it is constructed, so the evaluator only ever sees the eight
//! primitive constructors.

use super::ast::{Formula, Term};

/// A derived operator together with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derived {
    /// `~φ := φ -> _|_`
    Not(Formula),
    /// `⊤ := ~_|_`
    Top,
    /// Classical disjunction, `φ \/ ψ := ~(~φ & ~ψ)`.
    Or(Formula, Formula),
    /// Classical existential, `exists x. φ := ~forall x. ~φ`.
    Exists(String, Formula),
    /// Polar question, `?φ := φ V ~φ`.
    Question(Formula),
    /// `t != t' := ~(t = t')`
    Neq(Term, Term),
    /// Identification question `lam(t) := iexists x. x = t`.
    Lambda(Term),
    /// Identification question `mu(t) := forall x. ?(x = t)`.
    Mu(Term),
    /// Dependence atom `dep(t1,...,tn; t') := lam(t1) & ... & lam(tn) -> lam(t')`.
    Dep(Vec<Term>, Term),
}

impl Derived {
    pub fn desugar(self) -> Formula {
        match self {
            Derived::Not(f) => Formula::implies(f, Formula::bottom()),
            Derived::Top => Formula::not(Formula::bottom()),
            Derived::Or(a, b) => Formula::not(Formula::and(Formula::not(a), Formula::not(b))),
            Derived::Exists(x, body) => Formula::not(Formula::forall(&x, Formula::not(body))),
            Derived::Question(f) => Formula::inq_disj(f.clone(), Formula::not(f)),
            Derived::Neq(l, r) => Formula::not(Formula::equals(l, r)),
            Derived::Lambda(t) => {
                let x = fresh_var(&t);
                Formula::inq_exists(&x, Formula::equals(Term::Var(x.clone()), t))
            }
            Derived::Mu(t) => {
                let x = fresh_var(&t);
                Formula::forall(&x, Formula::question(Formula::equals(Term::Var(x.clone()), t)))
            }
            Derived::Dep(determiners, target) => Formula::implies(
                Formula::conj(determiners.into_iter().map(Formula::lambda)),
                Formula::lambda(target),
            ),
        }
    }
}

/// The least of `x0, x1, ...` that does not occur in `t`.
pub fn fresh_var(t: &Term) -> String {
    let used = t.vars();
    (0..)
        .map(|i| format!("x{i}"))
        .find(|x| !used.contains(x))
        .expect("unbounded supply of variable names")
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Derived::Not(f).desugar()
    }

    pub fn top() -> Formula {
        Derived::Top.desugar()
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Derived::Or(a, b).desugar()
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Derived::Exists(x.to_owned(), body).desugar()
    }

    pub fn question(f: Formula) -> Formula {
        Derived::Question(f).desugar()
    }

    pub fn neq(l: Term, r: Term) -> Formula {
        Derived::Neq(l, r).desugar()
    }

    pub fn lambda(t: Term) -> Formula {
        Derived::Lambda(t).desugar()
    }

    pub fn mu(t: Term) -> Formula {
        Derived::Mu(t).desugar()
    }

    pub fn dep(determiners: Vec<Term>, target: Term) -> Formula {
        Derived::Dep(determiners, target).desugar()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p", vec![])
    }

    fn q() -> Formula {
        Formula::atom("q", vec![])
    }

    #[test]
    fn expansions_match_definitions() {
        let bot = Formula::bottom;
        assert_eq!(Formula::top(), Formula::implies(bot(), bot()));
        assert_eq!(
            Formula::or(p(), q()),
            Formula::implies(
                Formula::and(Formula::implies(p(), bot()), Formula::implies(q(), bot())),
                bot()
            )
        );
        let px = Formula::atom("P", vec![Term::var("x")]);
        assert_eq!(
            Formula::exists("x", px.clone()),
            Formula::implies(Formula::forall("x", Formula::implies(px.clone(), bot())), bot())
        );
        assert_eq!(
            Formula::question(px.clone()),
            Formula::inq_disj(px.clone(), Formula::implies(px, bot()))
        );
    }

    #[test]
    fn lambda_uses_least_unused_variable() {
        let lam = Formula::lambda(Term::constant("a"));
        assert_eq!(lam, Formula::inq_exists("x0", Formula::equals(Term::var("x0"), Term::constant("a"))));
        let t = Term::app("f", vec![Term::var("x0"), Term::var("x2")]);
        assert_eq!(fresh_var(&t), "x1");
    }

    #[test]
    fn dep_is_implication_of_lambdas() {
        let a = Term::constant("a");
        let b = Term::constant("b");
        assert_eq!(
            Formula::dep(vec![a.clone()], b.clone()),
            Formula::implies(Formula::lambda(a), Formula::lambda(b))
        );
    }

    #[test]
    fn classical_preservation() {
        assert!(Formula::or(p(), q()).is_classical());
        assert!(Formula::exists("x", p()).is_classical());
        assert!(Formula::top().is_classical());
        assert!(!Formula::question(p()).is_classical());
        assert!(!Formula::lambda(Term::constant("a")).is_classical());
        assert!(!Formula::dep(vec![Term::constant("a")], Term::constant("b")).is_classical());
        assert!(!Formula::or(Formula::question(p()), q()).is_classical());
    }
}
