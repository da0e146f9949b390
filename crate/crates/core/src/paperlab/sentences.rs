use crate::logic::rigid_equality;
use crate::syntax::{Formula, Term};
use crate::Error;

fn a() -> Term {
    Term::constant("a")
}

fn b() -> Term {
    Term::constant("b")
}

/// `dep(a;b) ∧ dep(b;a) ∧ ∃∃x(x≠b) → ∃∃x(x≠a)`: supported by a full
/// id-model exactly when its domain is finite.
pub fn build_eta() -> Formula {
    let x = Term::var("x");
    let antecedent = Formula::conj([
        Formula::dep(vec![a()], b()),
        Formula::dep(vec![b()], a()),
        Formula::inq_exists("x", Formula::neq(x.clone(), b())),
    ]);
    Formula::implies(antecedent, Formula::inq_exists("x", Formula::neq(x, a())))
}

/// `∃∃x∃∃y¬(x=a ∧ y=b)`: some pair is never the value of `(a, b)`.
pub fn build_theta() -> Formula {
    let body = Formula::not(Formula::and(
        Formula::equals(Term::var("x"), a()),
        Formula::equals(Term::var("y"), b()),
    ));
    Formula::inq_exists("x", Formula::inq_exists("y", body))
}

/// `∃x1…∃xn ⋀_{i<j} xi≠xj`: there are at least `n` individuals.
pub fn build_chi(n: usize) -> Result<Formula, Error> {
    if n == 0 {
        return Err(Error::Precondition("chi needs n >= 1".into()));
    }
    let var = |i: usize| Term::var(&format!("x{i}"));
    let distinct = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).map(|(i, j)| Formula::neq(var(i), var(j)));
    let mut f = Formula::conj(distinct);
    for i in (1..=n).rev() {
        f = Formula::exists(&format!("x{i}"), f);
    }
    Ok(f)
}

/// `∀x∀y?(x=y)`.
pub fn build_rho() -> Formula {
    rigid_equality()
}

/// Looks up `eta`, `theta`, `rho` or `chiN` (for `N ≥ 1`).
pub fn named_sentence(name: &str) -> Option<Formula> {
    match name {
        "eta" => Some(build_eta()),
        "theta" => Some(build_theta()),
        "rho" => Some(build_rho()),
        _ => name.strip_prefix("chi").and_then(|n| n.parse().ok()).and_then(|n| build_chi(n).ok()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, print_formula, Signature};

    #[test]
    fn classification() {
        assert!(!build_eta().is_classical());
        assert!(!build_theta().is_classical());
        assert!(!build_rho().is_classical());
        for n in 1..=4 {
            assert!(build_chi(n).unwrap().is_classical());
        }
        assert!(build_chi(0).is_err());
    }

    #[test]
    fn textual_forms() {
        let sig = Signature::two_constants();
        let eta = parse_formula("dep(a; b) & dep(b; a) & (iexists x. x != b) -> iexists x. x != a", &sig).unwrap();
        assert_eq!(build_eta(), eta);
        assert_eq!(build_theta(), parse_formula("iexists x. iexists y. ~(x = a & y = b)", &sig).unwrap());
        assert_eq!(build_chi(2).unwrap(), parse_formula("exists x1. exists x2. x1 != x2", &sig).unwrap());
        assert_eq!(build_chi(1).unwrap(), parse_formula("exists x1. ~_|_", &sig).unwrap());
        assert_eq!(build_rho(), parse_formula("forall x. forall y. ?(x = y)", &sig).unwrap());
    }

    #[test]
    fn round_trip_through_printer() {
        let sig = Signature::two_constants();
        for f in [build_eta(), build_theta(), build_rho(), build_chi(3).unwrap()] {
            assert_eq!(parse_formula(&print_formula(&f), &sig).unwrap(), f);
        }
    }

    #[test]
    fn names() {
        assert_eq!(named_sentence("chi3"), build_chi(3).ok());
        assert_eq!(named_sentence("eta"), Some(build_eta()));
        assert!(named_sentence("chi0").is_none());
        assert!(named_sentence("zeta").is_none());
    }
}
