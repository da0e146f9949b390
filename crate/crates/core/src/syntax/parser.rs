use super::ast::{Formula, Span, Term};
use super::signature::{FunctionSymbol, PredicateSymbol, Signature, Symbol};
use super::{Derived, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Dot,
    Amp,
    InqOr,
    ClassicalOr,
    Arrow,
    Tilde,
    Question,
    Eq,
    Neq,
    Bottom,
    Forall,
    IExists,
    Exists,
    Lam,
    Mu,
    Dep,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("`{name}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Amp => "`&`".into(),
            Tok::InqOr => "`V`".into(),
            Tok::ClassicalOr => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Question => "`?`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Bottom => "`_|_`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::IExists => "`iexists`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Lam => "`lam`".into(),
            Tok::Mu => "`mu`".into(),
            Tok::Dep => "`dep`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("_|_") {
            (Tok::Bottom, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("!=") {
            (Tok::Neq, 2)
        } else if rest.starts_with("\\/") {
            (Tok::ClassicalOr, 2)
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            let word = &rest[..len];
            let tok = match word {
                "forall" => Tok::Forall,
                "iexists" => Tok::IExists,
                "exists" => Tok::Exists,
                "lam" => Tok::Lam,
                "mu" => Tok::Mu,
                "dep" => Tok::Dep,
                "V" => Tok::InqOr,
                _ => Tok::Ident(word.to_owned()),
            };
            (tok, len)
        } else {
            let tok = match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b';' => Tok::Semi,
                b'.' => Tok::Dot,
                b'&' => Tok::Amp,
                b'~' => Tok::Tilde,
                b'?' => Tok::Question,
                b'=' => Tok::Eq,
                _ => {
                    let found = rest.chars().next().expect("non-empty");
                    return Err(SyntaxError::Lexical {
                        found,
                        span: Span::new(start, start + found.len_utf8()),
                    });
                }
            };
            (tok, 1)
        };
        out.push((tok, Span::new(start, start + len)));
        i += len;
    }
    out.push((Tok::Eof, Span::new(text.len(), text.len())));
    Ok(out)
}

/// How to treat variables that no quantifier binds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FreeVarPolicy {
    /// Free variables are allowed; an assignment must cover them at evaluation time.
    #[default]
    Allow,
    /// Reject formulas with free variables.
    Deny,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    pub free_vars: FreeVarPolicy,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    sig: Signature,
    bound: Vec<String>,
    options: ParseOptions,
    /// Declare unknown names instead of rejecting them.
    declare: bool,
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    parse_formula_with(text, sig, ParseOptions::default())
}

pub fn parse_formula_with(
    text: &str,
    sig: &Signature,
    options: ParseOptions,
) -> Result<Formula, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, sig: sig.clone(), bound: Vec::new(), options, declare: false };
    let f = p.formula()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

/// Extends `base` with every symbol the texts use but it lacks.
///
/// An unknown name applied to arguments becomes a predicate in formula
/// position and a non-rigid function in term position; an unknown bare name
/// that no quantifier binds becomes a non-rigid constant. A name used with
/// two different arities is an error.
pub fn infer_signature<'a>(texts: impl IntoIterator<Item = &'a str>, base: &Signature) -> Result<Signature, SyntaxError> {
    let mut sig = base.clone();
    for text in texts {
        let mut p = Parser { toks: lex(text)?, pos: 0, sig, bound: Vec::new(), options: ParseOptions::default(), declare: true };
        p.formula()?;
        p.expect(Tok::Eof, "end of input")?;
        sig = p.sig;
    }
    Ok(sig)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, SyntaxError> {
    let mut p =
        Parser { toks: lex(text)?, pos: 0, sig: sig.clone(), bound: Vec::new(), options: ParseOptions::default(), declare: false };
    let (t, _) = p.term()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(t)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        SyntaxError::Unexpected {
            expected: expected.to_owned(),
            found: self.peek().describe(),
            span: self.span(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Span, SyntaxError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        self.implication()
    }

    // `->` is right-associative and binds loosest.
    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            let span = join(&lhs, &rhs);
            return Ok(Formula::implies(lhs, rhs).with_opt_span(span));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        loop {
            let classical = match self.peek() {
                Tok::InqOr => false,
                Tok::ClassicalOr => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.conjunction()?;
            let span = join(&lhs, &rhs);
            lhs = if classical { Formula::or(lhs, rhs) } else { Formula::inq_disj(lhs, rhs) }
                .with_opt_span(span);
        }
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            let span = join(&lhs, &rhs);
            lhs = Formula::and(lhs, rhs).with_opt_span(span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let start = self.span();
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                let body = self.unary()?;
                let span = body.span.map(|s| start.join(s));
                Ok(Formula::not(body).with_opt_span(span))
            }
            Tok::Question => {
                self.bump();
                let body = self.unary()?;
                let span = body.span.map(|s| start.join(s));
                Ok(Formula::question(body).with_opt_span(span))
            }
            Tok::Forall | Tok::IExists | Tok::Exists => self.quantifier(),
            _ => self.primary(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, SyntaxError> {
        let (q, start) = self.bump();
        let (var, var_span) = match self.peek() {
            Tok::Ident(_) => match self.bump() {
                (Tok::Ident(name), span) => (name, span),
                _ => unreachable!(),
            },
            _ => return Err(self.unexpected("a variable")),
        };
        if self.sig.contains(&var) {
            return Err(SyntaxError::SymbolAsVariable { name: var, span: var_span });
        }
        self.expect(Tok::Dot, "`.` after the quantified variable")?;
        self.bound.push(var.clone());
        let body = self.formula();
        self.bound.pop();
        let body = body?;
        let span = Some(start.join(body.span.unwrap_or(var_span)));
        let f = match q {
            Tok::Forall => Formula::forall(&var, body),
            Tok::IExists => Formula::inq_exists(&var, body),
            _ => Formula::exists(&var, body),
        };
        Ok(f.with_opt_span(span))
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok(f.with_span(start.join(end)))
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::bottom().with_span(start))
            }
            Tok::Lam | Tok::Mu => {
                let (which, _) = self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let (t, _) = self.term()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                let f = if which == Tok::Lam { Formula::lambda(t) } else { Formula::mu(t) };
                Ok(f.with_span(start.join(end)))
            }
            Tok::Dep => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut determiners = Vec::new();
                if *self.peek() != Tok::Semi {
                    determiners.push(self.term()?.0);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        determiners.push(self.term()?.0);
                    }
                }
                self.expect(Tok::Semi, "`;` in dep(...; ...)")?;
                let (target, _) = self.term()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok(Derived::Dep(determiners, target).desugar().with_span(start.join(end)))
            }
            Tok::Ident(name) => match self.sig.lookup(&name) {
                Some(Symbol::Predicate(i)) => {
                    self.bump();
                    let arity = self.sig.predicates()[i].arity;
                    let (args, end) = self.arguments(&name, arity, start)?;
                    Ok(Formula::atom(&name, args).with_span(start.join(end)))
                }
                None if self.declare && !self.bound.contains(&name) && self.names_predicate() => {
                    self.bump();
                    let (args, end) = self.argument_list(start)?;
                    self.declare_symbol(&name, args.len(), true, start)?;
                    Ok(Formula::atom(&name, args).with_span(start.join(end)))
                }
                _ => self.equation(),
            },
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn equation(&mut self) -> Result<Formula, SyntaxError> {
        let (lhs, lspan) = self.term()?;
        let negated = match self.peek() {
            Tok::Eq => false,
            Tok::Neq => true,
            _ => return Err(self.unexpected("`=` or `!=` after a term")),
        };
        self.bump();
        let (rhs, rspan) = self.term()?;
        let span = lspan.join(rspan);
        let f = if negated { Formula::neq(lhs, rhs) } else { Formula::equals(lhs, rhs) };
        Ok(f.with_span(span))
    }

    /// In formula position, whether the identifier at the cursor (with its
    /// argument list, if any) is followed by something other than `=`/`!=`.
    fn names_predicate(&self) -> bool {
        let mut i = self.pos + 1;
        if self.toks[i].0 == Tok::LParen {
            let mut depth = 0;
            while i < self.toks.len() {
                match self.toks[i].0 {
                    Tok::LParen => depth += 1,
                    Tok::RParen => depth -= 1,
                    Tok::Eof => return true,
                    _ => {}
                }
                i += 1;
                if depth == 0 {
                    break;
                }
            }
        }
        !matches!(self.toks.get(i).map(|t| &t.0), Some(Tok::Eq | Tok::Neq))
    }

    fn declare_symbol(&mut self, name: &str, arity: usize, predicate: bool, span: Span) -> Result<(), SyntaxError> {
        let mut preds = self.sig.predicates().to_vec();
        let mut funcs = self.sig.functions().to_vec();
        if predicate {
            preds.push(PredicateSymbol { name: name.to_owned(), arity });
        } else {
            funcs.push(FunctionSymbol { name: name.to_owned(), arity, rigid: false });
        }
        self.sig = Signature::new(preds, funcs).map_err(|_| SyntaxError::UnknownSymbol { name: name.to_owned(), span })?;
        Ok(())
    }

    fn arguments(
        &mut self,
        name: &str,
        arity: usize,
        start: Span,
    ) -> Result<(Vec<Term>, Span), SyntaxError> {
        let (args, end) = self.argument_list(start)?;
        if args.len() != arity {
            return Err(SyntaxError::Arity {
                name: name.to_owned(),
                expected: arity,
                found: args.len(),
                span: start.join(end),
            });
        }
        Ok((args, end))
    }

    fn argument_list(&mut self, start: Span) -> Result<(Vec<Term>, Span), SyntaxError> {
        let mut args = Vec::new();
        let mut end = start;
        if *self.peek() == Tok::LParen {
            self.bump();
            if *self.peek() != Tok::RParen {
                args.push(self.term()?.0);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.term()?.0);
                }
            }
            end = self.expect(Tok::RParen, "`,` or `)`")?;
        }
        Ok((args, end))
    }

    fn term(&mut self) -> Result<(Term, Span), SyntaxError> {
        let (name, start) = match self.peek() {
            Tok::Ident(_) => match self.bump() {
                (Tok::Ident(name), span) => (name, span),
                _ => unreachable!(),
            },
            _ => return Err(self.unexpected("a term")),
        };
        match self.sig.lookup(&name) {
            Some(Symbol::Function(i)) => {
                let arity = self.sig.functions()[i].arity;
                let (args, end) = self.arguments(&name, arity, start)?;
                Ok((Term::App(name, args), start.join(end)))
            }
            Some(Symbol::Predicate(_)) => Err(SyntaxError::PredicateAsTerm { name, span: start }),
            None if self.declare && *self.peek() == Tok::LParen => {
                let (args, end) = self.argument_list(start)?;
                self.declare_symbol(&name, args.len(), false, start)?;
                Ok((Term::App(name, args), start.join(end)))
            }
            None if self.declare && !self.bound.contains(&name) => {
                self.declare_symbol(&name, 0, false, start)?;
                Ok((Term::App(name, Vec::new()), start))
            }
            None => {
                if *self.peek() == Tok::LParen {
                    return Err(SyntaxError::UnknownSymbol { name, span: start });
                }
                if self.options.free_vars == FreeVarPolicy::Deny && !self.bound.contains(&name) {
                    return Err(SyntaxError::FreeVariable { name, span: start });
                }
                Ok((Term::Var(name), start))
            }
        }
    }
}

fn join(a: &Formula, b: &Formula) -> Option<Span> {
    match (a.span, b.span) {
        (Some(x), Some(y)) => Some(x.join(y)),
        (x, y) => x.or(y),
    }
}

impl Formula {
    fn with_opt_span(mut self, span: Option<Span>) -> Self {
        self.span = span;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::builder()
            .predicate("P", 1)
            .predicate("Q", 1)
            .predicate("r", 0)
            .constant("a")
            .constant("b")
            .function("f", 1, false)
            .build()
            .unwrap()
    }

    fn parse(text: &str) -> Formula {
        parse_formula(text, &sig()).unwrap()
    }

    fn px() -> Formula {
        Formula::atom("P", vec![Term::var("x")])
    }

    #[test]
    fn question_mark_desugars() {
        assert_eq!(
            parse("?P(x)"),
            Formula::inq_disj(px(), Formula::implies(px(), Formula::bottom()))
        );
    }

    #[test]
    fn bottom_token() {
        assert_eq!(parse("_|_"), Formula::bottom());
    }

    #[test]
    fn dep_desugars_to_lambdas() {
        let (a, b) = (Term::constant("a"), Term::constant("b"));
        assert_eq!(parse("dep(a;b)"), Formula::implies(Formula::lambda(a), Formula::lambda(b)));
    }

    #[test]
    fn precedence_and_associativity() {
        let (p, q, r) = (px(), Formula::atom("Q", vec![Term::var("x")]), Formula::atom("r", vec![]));
        // & over V over ->
        assert_eq!(
            parse("P(x) & Q(x) V r -> r"),
            Formula::implies(Formula::inq_disj(Formula::and(p.clone(), q.clone()), r.clone()), r.clone())
        );
        // -> is right-associative
        assert_eq!(
            parse("r -> r -> r"),
            Formula::implies(r.clone(), Formula::implies(r.clone(), r.clone()))
        );
        // ~ binds tighter than &
        assert_eq!(parse("~r & r"), Formula::and(Formula::not(r.clone()), r.clone()));
        // quantifiers extend as far right as possible
        assert_eq!(
            parse("r & forall x. P(x) -> Q(x)"),
            Formula::and(r.clone(), Formula::forall("x", Formula::implies(p.clone(), q.clone())))
        );
        assert_eq!(
            parse("(forall x. P(x)) -> Q(x)"),
            Formula::implies(Formula::forall("x", p), q)
        );
    }

    #[test]
    fn sugar_forms() {
        let (a, b) = (Term::constant("a"), Term::constant("b"));
        assert_eq!(parse("a != b"), Formula::neq(a.clone(), b.clone()));
        assert_eq!(parse("exists x. P(x)"), Formula::exists("x", px()));
        assert_eq!(parse("r \\/ r"), Formula::or(Formula::atom("r", vec![]), Formula::atom("r", vec![])));
        assert_eq!(parse("lam(f(a))"), Formula::lambda(Term::app("f", vec![a.clone()])));
        assert_eq!(parse("mu(b)"), Formula::mu(b));
    }

    #[test]
    fn errors_carry_spans() {
        let s = sig();
        assert!(matches!(parse_formula("P(x) # r", &s), Err(SyntaxError::Lexical { found: '#', span }) if span == Span::new(5, 6)));
        assert!(matches!(parse_formula("R(x)", &s), Err(SyntaxError::UnknownSymbol { .. })));
        assert!(matches!(
            parse_formula("P(x, a)", &s),
            Err(SyntaxError::Arity { expected: 1, found: 2, .. })
        ));
        assert!(matches!(parse_formula("P(x) &", &s), Err(SyntaxError::Unexpected { .. })));
        assert!(matches!(parse_formula("forall a. P(a)", &s), Err(SyntaxError::SymbolAsVariable { .. })));
        assert!(matches!(parse_formula("a = P", &s), Err(SyntaxError::PredicateAsTerm { .. })));
    }

    #[test]
    fn free_variable_policy() {
        let deny = ParseOptions { free_vars: FreeVarPolicy::Deny };
        assert!(parse_formula_with("forall x. P(x)", &sig(), deny).is_ok());
        assert!(matches!(
            parse_formula_with("forall y. P(x)", &sig(), deny),
            Err(SyntaxError::FreeVariable { name, .. }) if name == "x"
        ));
    }

    #[test]
    fn top_level_span_covers_input() {
        let f = parse("P(x) & Q(a)");
        assert_eq!(f.span, Some(Span::new(0, 11)));
    }

    #[test]
    fn inferred_signatures() {
        let sig = infer_signature(["exists x. P(x)", "forall x. ?P(x) -> R(x, f(c)) & q", "g(a) = b"], &Signature::default()).unwrap();
        // arguments are declared before the symbol applied to them
        let expected = Signature::builder()
            .predicate("P", 1)
            .predicate("R", 2)
            .predicate("q", 0)
            .constant("c")
            .function("f", 1, false)
            .constant("a")
            .function("g", 1, false)
            .constant("b")
            .build()
            .unwrap();
        assert_eq!(sig, expected);
        assert!(parse_formula("forall x. ?P(x) -> R(x, f(c)) & q", &sig).is_ok());
        let base = Signature::two_constants();
        assert_eq!(infer_signature(["dep(a; b)"], &base).unwrap(), base);
        assert!(matches!(infer_signature(["P(a) & P(a, b)"], &base), Err(SyntaxError::Arity { .. })));
    }
}
