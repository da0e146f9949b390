use super::ast::{Formula, FormulaKind, Term};

const IMP: u8 = 1;
const DISJ: u8 = 2;
const CONJ: u8 = 3;
const UNARY: u8 = 4;

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::App(f, args) => {
            out.push_str(f);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(a, out);
                }
                out.push(')');
            }
        }
    }
}

/// Renders a formula in the ASCII grammar.
///
/// Expansions of `~`, `!=`, `exists`, `\/` and `?` are printed in their
/// derived form; everything else uses the primitive operators. Parsing the
/// output expands the derived forms again, giving back the same tree.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, true, &mut out);
    out
}

fn negated(f: &Formula) -> Option<&Formula> {
    match &f.kind {
        FormulaKind::Implies(a, b) if b.kind == FormulaKind::Bottom => Some(a),
        _ => None,
    }
}

// `ctx` is the binding strength the surrounding operator demands; `last` says
// whether nothing follows this formula inside the current group, which is when
// a quantifier body may run to the right without parentheses.
fn write(f: &Formula, ctx: u8, last: bool, out: &mut String) {
    if let Some(inner) = negated(f) {
        match &inner.kind {
            FormulaKind::Forall(x, body) => {
                if let Some(phi) = negated(body) {
                    quantifier("exists", x, phi, last, out);
                    return;
                }
            }
            FormulaKind::And(a, b) => {
                if let (Some(a), Some(b)) = (negated(a), negated(b)) {
                    binary(a, " \\/ ", b, DISJ, false, ctx, last, out);
                    return;
                }
            }
            _ => {}
        }
        if let FormulaKind::Equals(l, r) = &inner.kind {
            write_term(l, out);
            out.push_str(" != ");
            write_term(r, out);
            return;
        }
        out.push('~');
        write(inner, UNARY, last, out);
        return;
    }
    match &f.kind {
        FormulaKind::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(a, out);
                }
                out.push(')');
            }
        }
        FormulaKind::Equals(l, r) => {
            write_term(l, out);
            out.push_str(" = ");
            write_term(r, out);
        }
        FormulaKind::Bottom => out.push_str("_|_"),
        FormulaKind::And(a, b) => binary(a, " & ", b, CONJ, false, ctx, last, out),
        FormulaKind::InqDisj(a, b) if negated(b) == Some(&**a) => {
            out.push('?');
            write(a, UNARY, last, out);
        }
        FormulaKind::InqDisj(a, b) => binary(a, " V ", b, DISJ, false, ctx, last, out),
        FormulaKind::Implies(a, b) => binary(a, " -> ", b, IMP, true, ctx, last, out),
        FormulaKind::Forall(x, body) => quantifier("forall", x, body, last, out),
        FormulaKind::InqExists(x, body) => quantifier("iexists", x, body, last, out),
    }
}

fn quantifier(word: &str, x: &str, body: &Formula, last: bool, out: &mut String) {
    if !last {
        out.push('(');
    }
    out.push_str(word);
    out.push(' ');
    out.push_str(x);
    out.push_str(". ");
    write(body, 0, true, out);
    if !last {
        out.push(')');
    }
}

#[allow(clippy::too_many_arguments)]
fn binary(
    a: &Formula,
    op: &str,
    b: &Formula,
    prec: u8,
    right_assoc: bool,
    ctx: u8,
    last: bool,
    out: &mut String,
) {
    let parens = prec < ctx;
    let last = parens || last;
    let (lctx, rctx) = if right_assoc { (prec + 1, prec) } else { (prec, prec + 1) };
    if parens {
        out.push('(');
    }
    write(a, lctx, false, out);
    out.push_str(op);
    write(b, rctx, last, out);
    if parens {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_tokens() {
        assert_eq!(print_formula(&Formula::bottom()), "_|_");
        let px = Formula::atom("P", vec![Term::var("x")]);
        let qx = Formula::atom("Q", vec![Term::var("x")]);
        assert_eq!(print_formula(&Formula::inq_disj(px, qx)), "P(x) V Q(x)");
    }

    #[test]
    fn quantifier_in_left_operand_is_parenthesised() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let r = Formula::atom("r", vec![]);
        let f = Formula::and(Formula::forall("x", px.clone()), r.clone());
        assert_eq!(print_formula(&f), "(forall x. P(x)) & r");
        let g = Formula::implies(Formula::and(r.clone(), Formula::forall("x", px)), r);
        assert_eq!(print_formula(&g), "r & (forall x. P(x)) -> r");
    }

    #[test]
    fn negation_forms() {
        let a = Term::constant("a");
        let b = Term::constant("b");
        assert_eq!(print_formula(&Formula::neq(a.clone(), b.clone())), "a != b");
        let conj = Formula::and(Formula::equals(a.clone(), b.clone()), Formula::equals(b, a));
        assert_eq!(print_formula(&Formula::not(conj)), "~(a = b & b = a)");
    }

    #[test]
    fn derived_forms() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let r = Formula::atom("r", vec![]);
        assert_eq!(print_formula(&Formula::exists("x", px.clone())), "exists x. P(x)");
        assert_eq!(print_formula(&Formula::or(r.clone(), px.clone())), "r \\/ P(x)");
        assert_eq!(print_formula(&Formula::question(r.clone())), "?r");
        let f = Formula::and(Formula::question(Formula::or(r.clone(), r.clone())), Formula::exists("x", px));
        assert_eq!(print_formula(&f), "?(r \\/ r) & exists x. P(x)");
    }
}
