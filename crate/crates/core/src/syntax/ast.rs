use std::collections::BTreeSet;
use std::fmt;

/// Byte range into the source text a node was parsed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Application of a function symbol; constants have no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.to_owned(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_owned(), args)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }
}

/// A formula built from the eight primitive constructors.
///
/// Equality ignores `span`, so a parsed formula compares equal to the same
/// formula built programmatically.
#[derive(Clone, Debug)]
pub struct Formula {
    pub kind: FormulaKind,
    pub span: Option<Span>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaKind {
    Atom(String, Vec<Term>),
    Equals(Term, Term),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    /// Inquisitive disjunction.
    InqDisj(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    /// Inquisitive existential quantifier.
    InqExists(String, Box<Formula>),
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Formula {}

impl From<FormulaKind> for Formula {
    fn from(kind: FormulaKind) -> Self {
        Formula { kind, span: None }
    }
}

impl Formula {
    pub fn with_span(mut self, span: Span) -> Self {
        self.span = Some(span);
        self
    }

    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        FormulaKind::Atom(pred.to_owned(), args).into()
    }

    pub fn equals(lhs: Term, rhs: Term) -> Formula {
        FormulaKind::Equals(lhs, rhs).into()
    }

    pub fn bottom() -> Formula {
        FormulaKind::Bottom.into()
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        FormulaKind::And(Box::new(lhs), Box::new(rhs)).into()
    }

    pub fn inq_disj(lhs: Formula, rhs: Formula) -> Formula {
        FormulaKind::InqDisj(Box::new(lhs), Box::new(rhs)).into()
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        FormulaKind::Implies(Box::new(lhs), Box::new(rhs)).into()
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        FormulaKind::Forall(var.to_owned(), Box::new(body)).into()
    }

    pub fn inq_exists(var: &str, body: Formula) -> Formula {
        FormulaKind::InqExists(var.to_owned(), Box::new(body)).into()
    }

    /// Left-nested conjunction; the empty conjunction is `⊤`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::top)
    }

    /// True iff neither `V` nor `iexists` occurs.
    pub fn is_classical(&self) -> bool {
        match &self.kind {
            FormulaKind::Atom(..) | FormulaKind::Equals(..) | FormulaKind::Bottom => true,
            FormulaKind::And(a, b) | FormulaKind::Implies(a, b) => a.is_classical() && b.is_classical(),
            FormulaKind::Forall(_, body) => body.is_classical(),
            FormulaKind::InqDisj(..) | FormulaKind::InqExists(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut term_vars = |t: &Term, bound: &Vec<&str>| {
            for x in t.vars() {
                if !bound.contains(&x.as_str()) {
                    out.insert(x);
                }
            }
        };
        match &self.kind {
            FormulaKind::Atom(_, args) => args.iter().for_each(|t| term_vars(t, bound)),
            FormulaKind::Equals(l, r) => {
                term_vars(l, bound);
                term_vars(r, bound);
            }
            FormulaKind::Bottom => {}
            FormulaKind::And(a, b) | FormulaKind::InqDisj(a, b) | FormulaKind::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FormulaKind::Forall(x, body) | FormulaKind::InqExists(x, body) => {
                bound.push(x);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match &f.kind {
            FormulaKind::Atom(_, args) => args.iter().for_each(|t| t.collect_vars(&mut out)),
            FormulaKind::Equals(l, r) => {
                l.collect_vars(&mut out);
                r.collect_vars(&mut out);
            }
            FormulaKind::Forall(x, _) | FormulaKind::InqExists(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Number of primitive nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match &self.kind {
            FormulaKind::And(a, b) | FormulaKind::InqDisj(a, b) | FormulaKind::Implies(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            FormulaKind::Forall(_, body) | FormulaKind::InqExists(_, body) => body.walk(visit),
            _ => {}
        }
    }

    /// Names of predicate and function symbols used, in first-occurrence order.
    pub fn symbols(&self) -> Vec<String> {
        fn term_symbols(t: &Term, out: &mut Vec<String>) {
            if let Term::App(f, args) = t {
                if !out.contains(f) {
                    out.push(f.clone());
                }
                args.iter().for_each(|a| term_symbols(a, out));
            }
        }
        let mut out = Vec::new();
        self.walk(&mut |f| match &f.kind {
            FormulaKind::Atom(p, args) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
                args.iter().for_each(|t| term_symbols(t, &mut out));
            }
            FormulaKind::Equals(l, r) => {
                term_symbols(l, &mut out);
                term_symbols(r, &mut out);
            }
            _ => {}
        });
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print_term(self))
    }
}
