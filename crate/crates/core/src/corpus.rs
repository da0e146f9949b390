//! Seeded random models, structures, states and formulas.
//!
//! Everything here is deterministic given the generator, so test corpora
//! are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::models::{
    all_partitions, tuple_at, tuple_index, FuncTable, InfoModel, Interpretation, Partition, Relation, State, Structure,
    World,
};
use crate::semantics::Assignment;
use crate::syntax::{Formula, Signature, Term};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `P/1`, `R/2`, `q/0`, and non-rigid `c/0`, `f/1`.
pub fn corpus_signature() -> Signature {
    Signature::builder()
        .predicate("P", 1)
        .predicate("R", 2)
        .predicate("q", 0)
        .constant("c")
        .function("f", 1, false)
        .build()
        .expect("valid signature")
}

fn random_interp(rng: &mut CorpusRng, sig: &Signature, n: usize) -> Interpretation {
    let preds = sig
        .predicates()
        .iter()
        .map(|p| Relation { arity: p.arity, members: (0..n.pow(p.arity as u32)).map(|_| rng.gen_bool(0.5)).collect() })
        .collect();
    let funcs = sig
        .functions()
        .iter()
        .map(|f| FuncTable { arity: f.arity, values: (0..n.pow(f.arity as u32)).map(|_| rng.gen_range(0..n) as u32).collect() })
        .collect();
    Interpretation { preds, funcs }
}

/// Makes every table depend only on equivalence classes of arguments.
fn make_congruent(interp: &mut Interpretation, eq: &Partition, n: usize) {
    let rep_index = |i: usize, arity: usize| {
        let t: Vec<usize> = tuple_at(i, arity, n).into_iter().map(|d| eq.rep(d)).collect();
        tuple_index(&t, n)
    };
    for rel in &mut interp.preds {
        rel.members = (0..rel.members.len()).map(|i| rel.members[rep_index(i, rel.arity)]).collect();
    }
    for table in &mut interp.funcs {
        table.values = (0..table.values.len()).map(|i| table.values[rep_index(i, table.arity)]).collect();
    }
}

/// A valid model with `1..=max_worlds` worlds and `1..=max_domain` individuals.
pub fn random_model(rng: &mut CorpusRng, sig: &Signature, max_worlds: usize, max_domain: usize, id_only: bool) -> InfoModel {
    let n = rng.gen_range(1..=max_domain);
    let k = rng.gen_range(1..=max_worlds);
    let partitions = all_partitions(n);
    let rigid = random_interp(rng, sig, n);
    let worlds = (0..k)
        .map(|_| {
            // identity half the time, so id-like worlds stay common
            let eq = if id_only || rng.gen_bool(0.5) {
                Partition::discrete(n)
            } else {
                partitions.choose(rng).expect("non-empty").clone()
            };
            let mut interp = random_interp(rng, sig, n);
            for (i, f) in sig.functions().iter().enumerate() {
                if f.rigid {
                    interp.funcs[i] = rigid.funcs[i].clone();
                    if f.arity > 0 && !id_only {
                        // constant tables are congruent for every equality
                        let v = interp.funcs[i].values[0];
                        interp.funcs[i].values.iter_mut().for_each(|x| *x = v);
                    }
                }
            }
            make_congruent(&mut interp, &eq, n);
            World { interp, eq }
        })
        .collect();
    let model = InfoModel {
        sig: sig.clone(),
        world_names: (0..k).map(|i| format!("w{i}")).collect(),
        domain_names: (0..n).map(|i| format!("d{i}")).collect(),
        worlds,
    };
    debug_assert!(model.validate().is_ok());
    model
}

pub fn random_structure(rng: &mut CorpusRng, sig: &Signature, max_domain: usize) -> Structure {
    let n = rng.gen_range(1..=max_domain);
    Structure { sig: sig.clone(), domain_names: (0..n).map(|i| format!("d{i}")).collect(), interp: random_interp(rng, sig, n) }
}

pub fn random_state(rng: &mut CorpusRng, m: &InfoModel) -> State {
    State(rng.gen_range(0..=m.full_state().bits()))
}

pub fn random_assignment(rng: &mut CorpusRng, vars: &[String], n: usize) -> Assignment {
    vars.iter().map(|x| (x.clone(), rng.gen_range(0..n))).collect()
}

#[derive(Clone, Debug)]
pub struct FormulaOptions {
    pub depth: usize,
    /// Only `⊥ ∧ → ∀` and classical sugar.
    pub classical: bool,
    /// Variables that may occur free.
    pub free_vars: Vec<String>,
    /// Names used for bound variables; reuse produces shadowing.
    pub bound_vars: Vec<String>,
}

impl FormulaOptions {
    pub fn new(depth: usize) -> Self {
        FormulaOptions { depth, classical: false, free_vars: Vec::new(), bound_vars: vec!["x".into(), "y".into(), "z".into()] }
    }

    pub fn classical(mut self, classical: bool) -> Self {
        self.classical = classical;
        self
    }

    pub fn free_vars(mut self, vars: &[&str]) -> Self {
        self.free_vars = vars.iter().map(|v| (*v).to_owned()).collect();
        self
    }
}

pub fn random_formula(rng: &mut CorpusRng, sig: &Signature, opts: &FormulaOptions) -> Formula {
    let mut scope = opts.free_vars.clone();
    gen_formula(rng, sig, opts, opts.depth, &mut scope)
}

fn gen_term(rng: &mut CorpusRng, sig: &Signature, scope: &[String], depth: usize) -> Option<Term> {
    let constants: Vec<&str> = sig.functions().iter().filter(|f| f.arity == 0).map(|f| f.name.as_str()).collect();
    let unary: Vec<&str> = sig.functions().iter().filter(|f| f.arity == 1).map(|f| f.name.as_str()).collect();
    if depth > 0 && !unary.is_empty() && rng.gen_bool(0.15) {
        let f = unary.choose(rng).expect("non-empty");
        return gen_term(rng, sig, scope, depth - 1).map(|t| Term::app(f, vec![t]));
    }
    let choices = scope.len() + constants.len();
    if choices == 0 {
        return None;
    }
    let i = rng.gen_range(0..choices);
    Some(if i < scope.len() { Term::Var(scope[i].clone()) } else { Term::constant(constants[i - scope.len()]) })
}

fn gen_atom(rng: &mut CorpusRng, sig: &Signature, scope: &[String]) -> Formula {
    for _ in 0..8 {
        let pick = rng.gen_range(0..sig.predicates().len() + 2);
        if pick < sig.predicates().len() {
            let p = &sig.predicates()[pick];
            let args: Option<Vec<Term>> = (0..p.arity).map(|_| gen_term(rng, sig, scope, 1)).collect();
            if let Some(args) = args {
                return Formula::atom(&p.name, args);
            }
        } else if pick == sig.predicates().len() {
            if let (Some(l), Some(r)) = (gen_term(rng, sig, scope, 1), gen_term(rng, sig, scope, 1)) {
                return Formula::equals(l, r);
            }
        } else if rng.gen_bool(0.3) {
            return Formula::bottom();
        }
    }
    Formula::bottom()
}

fn gen_formula(rng: &mut CorpusRng, sig: &Signature, opts: &FormulaOptions, depth: usize, scope: &mut Vec<String>) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return gen_atom(rng, sig, scope);
    }
    let ops = if opts.classical { 7 } else { 11 };
    let sub = |rng: &mut CorpusRng, scope: &mut Vec<String>| gen_formula(rng, sig, opts, depth - 1, scope);
    match rng.gen_range(0..ops) {
        0 => Formula::and(sub(rng, scope), sub(rng, scope)),
        1 => Formula::implies(sub(rng, scope), sub(rng, scope)),
        2 => Formula::not(sub(rng, scope)),
        3 => Formula::or(sub(rng, scope), sub(rng, scope)),
        4 | 5 | 7 | 8 => {
            let x = opts.bound_vars.choose(rng).expect("bound variable names").clone();
            scope.push(x.clone());
            let body = sub(rng, scope);
            scope.pop();
            if !opts.classical && rng.gen_bool(0.4) {
                Formula::inq_exists(&x, body)
            } else if rng.gen_bool(0.5) {
                Formula::forall(&x, body)
            } else {
                Formula::exists(&x, body)
            }
        }
        6 => Formula::and(sub(rng, scope), Formula::not(sub(rng, scope))),
        9 => Formula::inq_disj(sub(rng, scope), sub(rng, scope)),
        _ => Formula::question(sub(rng, scope)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_models_are_valid() {
        let sig = corpus_signature();
        let mut r = rng(7);
        for _ in 0..200 {
            let m = random_model(&mut r, &sig, 3, 3, false);
            assert!(m.validate().is_ok());
        }
        let rigid = Signature::builder().predicate("P", 1).function("g", 1, true).build().unwrap();
        for _ in 0..100 {
            assert!(random_model(&mut r, &rigid, 3, 3, false).validate().is_ok());
            assert!(random_model(&mut r, &rigid, 3, 3, true).is_id_model());
        }
    }

    #[test]
    fn generated_formulas_respect_options() {
        let sig = corpus_signature();
        let mut r = rng(11);
        for _ in 0..300 {
            let f = random_formula(&mut r, &sig, &FormulaOptions::new(4).classical(true));
            assert!(f.is_classical());
            assert!(f.is_sentence());
            crate::syntax::check_formula(&f, &sig).unwrap();
        }
        let open = FormulaOptions::new(3).free_vars(&["u"]);
        for _ in 0..100 {
            let f = random_formula(&mut r, &sig, &open);
            assert!(f.free_vars().iter().all(|v| v == "u"));
        }
    }

    #[test]
    fn same_seed_same_output() {
        let sig = corpus_signature();
        let a = random_formula(&mut rng(3), &sig, &FormulaOptions::new(5));
        let b = random_formula(&mut rng(3), &sig, &FormulaOptions::new(5));
        assert_eq!(a, b);
    }
}
