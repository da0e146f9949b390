use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::models::{enumerate_models, EnumerationConfig, InfoModel, Pruning, State};
use crate::semantics::{supports_with, Assignment, EvalConfig, Evaluator, StateSet};
use crate::syntax::{Formula, Signature, Term};

use super::{Countermodel, LogicError, Verdict};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_worlds: usize,
    pub max_domain: usize,
    /// Only search models whose equality relations are all the identity.
    pub id_only: bool,
    pub pruning: Pruning,
    /// Evaluation settings for each candidate model (its budget is per model).
    pub eval: EvalConfig,
    /// Cap on the number of candidate models.
    pub max_models: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Check candidates one at a time, in enumeration order.
    pub deterministic: bool,
}

impl SearchConfig {
    pub fn new(max_worlds: usize, max_domain: usize) -> Self {
        SearchConfig {
            max_worlds,
            max_domain,
            id_only: false,
            pruning: Pruning::WorldOrder,
            eval: EvalConfig::default(),
            max_models: 50_000_000,
            workers: None,
            deterministic: false,
        }
    }

    pub fn id_only(mut self, id_only: bool) -> Self {
        self.id_only = id_only;
        self
    }

    pub fn pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn deterministic(mut self, deterministic: bool) -> Self {
        self.deterministic = deterministic;
        self
    }

    pub fn eval(mut self, eval: EvalConfig) -> Self {
        self.eval = eval;
        self
    }

    pub fn workers(mut self, workers: Option<usize>) -> Self {
        self.workers = workers;
        self
    }
}

type Found = Option<(State, Assignment)>;

const BATCH: usize = 256;

/// Runs `check` on every enumerated model and returns the first hit in
/// enumeration order, whatever the number of workers.
fn search<F>(sig: &Signature, cfg: &SearchConfig, check: F) -> Result<Verdict, LogicError>
where
    F: Fn(&InfoModel) -> Result<Found, LogicError> + Sync,
{
    let ecfg = EnumerationConfig::new(cfg.max_worlds, cfg.max_domain)
        .id_only(cfg.id_only)
        .pruning(cfg.pruning)
        .max_models(cfg.max_models);
    let mut models = enumerate_models(sig, &ecfg)?;
    let sequential = cfg.deterministic || cfg.workers == Some(1);
    let pool = match cfg.workers {
        Some(w) if !sequential => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| LogicError::Workers(e.to_string()))?,
        ),
        _ => None,
    };
    let mut examined = 0u64;
    loop {
        let batch: Vec<InfoModel> = models.by_ref().take(if sequential { 1 } else { BATCH }).collect();
        if batch.is_empty() {
            break;
        }
        let run = || {
            batch.par_iter().enumerate().find_map_first(|(i, m)| match check(m) {
                Ok(None) => None,
                Ok(Some(hit)) => Some(Ok((i, hit))),
                Err(e) => Some(Err(e)),
            })
        };
        let hit = if sequential {
            match check(&batch[0]) {
                Ok(None) => None,
                Ok(Some(hit)) => Some(Ok((0, hit))),
                Err(e) => Some(Err(e)),
            }
        } else if let Some(pool) = &pool {
            pool.install(run)
        } else {
            run()
        };
        match hit {
            Some(Ok((i, (state, assignment)))) => {
                examined += i as u64 + 1;
                let model = batch.into_iter().nth(i).expect("hit index within batch");
                return Ok(Verdict::Countermodel(Countermodel { model, state, assignment, models_examined: examined }));
            }
            Some(Err(e)) => return Err(e),
            None => examined += batch.len() as u64,
        }
    }
    Ok(Verdict::ExhaustedBounds { max_worlds: cfg.max_worlds, max_domain: cfg.max_domain, models_examined: examined })
}

fn free_vars<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<String> {
    let mut vars = BTreeSet::new();
    for f in formulas {
        vars.extend(f.free_vars());
    }
    vars.into_iter().collect()
}

/// The part of `sig` the formulas actually mention; other symbols cannot
/// affect support, so they are left out of the search.
fn used_signature<'a>(sig: &Signature, formulas: impl IntoIterator<Item = &'a Formula>) -> Signature {
    let mut names = Vec::new();
    for f in formulas {
        for s in f.symbols() {
            if !names.contains(&s) {
                names.push(s);
            }
        }
    }
    sig.restrict(&names)
}

fn first_counterexample(
    m: &InfoModel,
    premises: &[Formula],
    conclusion: &Formula,
    vars: &[String],
    eval: &EvalConfig,
) -> Result<Found, LogicError> {
    let mut evs = premises.iter().map(|p| Evaluator::new(m, p, eval)).collect::<Result<Vec<_>, _>>()?;
    let mut conc = Evaluator::new(m, conclusion, eval)?;
    for g in Assignment::all(vars, m.domain_size()) {
        let mut set = StateSet::all(m.num_worlds());
        for ev in &mut evs {
            set.and_assign(&ev.support_set(&g)?);
            if set.is_empty() {
                break;
            }
        }
        if set.is_empty() {
            continue;
        }
        set.and_not_assign(&conc.support_set(&g)?);
        if let Some(s) = set.first() {
            return Ok(Some((s, g)));
        }
    }
    Ok(None)
}

fn reverify_entailment(premises: &[Formula], conclusion: &Formula, cm: &Countermodel) -> Result<(), LogicError> {
    let naive = EvalConfig::naive();
    let (m, s, g) = (&cm.model, cm.state, &cm.assignment);
    for p in premises {
        if !supports_with(m, s, g, p, &naive)? {
            return Err(LogicError::Unverified(format!("premise `{p}` is not supported")));
        }
    }
    if supports_with(m, s, g, conclusion, &naive)? {
        return Err(LogicError::Unverified(format!("conclusion `{conclusion}` is supported")));
    }
    Ok(())
}

/// Searches for a model, state and assignment supporting every premise but
/// not the conclusion. Exhaustion only means there is none within bounds.
pub fn entails(sig: &Signature, premises: &[Formula], conclusion: &Formula, cfg: &SearchConfig) -> Result<Verdict, LogicError> {
    let all = || premises.iter().chain([conclusion]);
    let vars = free_vars(all());
    let sig = used_signature(sig, all());
    let verdict = search(&sig, cfg, |m| first_counterexample(m, premises, conclusion, &vars, &cfg.eval))?;
    if let Verdict::Countermodel(cm) = &verdict {
        reverify_entailment(premises, conclusion, cm)?;
    }
    Ok(verdict)
}

pub fn valid(sig: &Signature, f: &Formula, cfg: &SearchConfig) -> Result<Verdict, LogicError> {
    entails(sig, &[], f, cfg)
}

/// Searches for a point where exactly one of the two formulas is supported.
pub fn equivalent(sig: &Signature, lhs: &Formula, rhs: &Formula, cfg: &SearchConfig) -> Result<Verdict, LogicError> {
    let vars = free_vars([lhs, rhs]);
    let sig = used_signature(sig, [lhs, rhs]);
    let verdict = search(&sig, cfg, |m| {
        let mut l = Evaluator::new(m, lhs, &cfg.eval)?;
        let mut r = Evaluator::new(m, rhs, &cfg.eval)?;
        for g in Assignment::all(&vars, m.domain_size()) {
            let (a, b) = (l.support_set(&g)?, r.support_set(&g)?);
            let mut diff = a.clone();
            diff.and_not_assign(&b);
            let mut other = b;
            other.and_not_assign(&a);
            diff.or_assign(&other);
            if let Some(s) = diff.first() {
                return Ok(Some((s, g)));
            }
        }
        Ok(None)
    })?;
    if let Verdict::Countermodel(cm) = &verdict {
        let naive = EvalConfig::naive();
        let l = supports_with(&cm.model, cm.state, &cm.assignment, lhs, &naive)?;
        let r = supports_with(&cm.model, cm.state, &cm.assignment, rhs, &naive)?;
        if l == r {
            return Err(LogicError::Unverified("both sides agree at the reported point".into()));
        }
    }
    Ok(verdict)
}

/// `∀x∀y?(x=y)`: equality is the same relation throughout the state.
pub fn rigid_equality() -> Formula {
    let (x, y) = (Term::var("x"), Term::var("y"));
    Formula::forall("x", Formula::forall("y", Formula::question(Formula::equals(x, y))))
}

/// Id-entailment decided through general entailment with rigid equality
/// added as a premise.
pub fn id_entails_via_translation(
    sig: &Signature,
    premises: &[Formula],
    conclusion: &Formula,
    cfg: &SearchConfig,
) -> Result<Verdict, LogicError> {
    let mut extended = premises.to_vec();
    extended.push(rigid_equality());
    entails(sig, &extended, conclusion, &cfg.clone().id_only(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelError;
    use crate::syntax::parse_formula;

    fn sig() -> Signature {
        Signature::builder().predicate("P", 1).constant("c").constant("a").constant("b").build().unwrap()
    }

    fn f(text: &str) -> Formula {
        parse_formula(text, &sig()).unwrap()
    }

    #[test]
    fn mention_all_and_existence_give_a_witness() {
        let cfg = SearchConfig::new(3, 3);
        let v = entails(&sig(), &[f("exists x. P(x)"), f("forall x. ?P(x)")], &f("iexists x. P(x)"), &cfg).unwrap();
        assert!(!v.is_countermodel());
    }

    #[test]
    fn existence_alone_does_not() {
        let cfg = SearchConfig::new(3, 3);
        let v = entails(&sig(), &[f("exists x. P(x)")], &f("iexists x. P(x)"), &cfg).unwrap();
        let cm = v.countermodel().unwrap();
        assert_eq!((cm.model.num_worlds(), cm.model.domain_size()), (2, 2));
        assert_eq!(cm.state, cm.model.full_state());
        let p = cm.model.signature().predicate_index("P").unwrap();
        let ext: Vec<_> = cm.model.worlds().iter().map(|w| w.interpretation().predicate(p).tuples(2)).collect();
        assert!(ext.iter().all(|e| e.len() == 1) && ext[0] != ext[1]);
    }

    #[test]
    fn top_is_valid_and_rigid_equality_only_on_id_models() {
        let cfg = SearchConfig::new(3, 2);
        assert!(!valid(&sig(), &Formula::top(), &cfg).unwrap().is_countermodel());
        let rho = rigid_equality();
        assert!(!valid(&sig(), &rho, &cfg.clone().id_only(true)).unwrap().is_countermodel());
        let v = valid(&sig(), &rho, &cfg).unwrap();
        let cm = v.countermodel().unwrap();
        assert!(!cm.model.is_id_model());
        assert!(!valid(&sig(), &f("?(c = c)"), &cfg).unwrap().is_countermodel());
    }

    #[test]
    fn identification_questions() {
        let cfg = SearchConfig::new(3, 3);
        assert!(!equivalent(&sig(), &f("lam(a)"), &f("mu(a)"), &cfg.clone().id_only(true)).unwrap().is_countermodel());
        assert!(equivalent(&sig(), &f("lam(a)"), &f("mu(a)"), &cfg).unwrap().is_countermodel());
        let phi = f("forall x. ?P(x) V P(c)");
        assert!(!equivalent(&sig(), &phi, &phi, &cfg).unwrap().is_countermodel());
    }

    #[test]
    fn translation_agrees_on_small_cases() {
        let cfg = SearchConfig::new(3, 2);
        let cases = [(vec![], rigid_equality()), (vec![f("lam(a)")], f("mu(a)")), (vec![f("exists x. P(x)")], f("iexists x. P(x)"))];
        for (premises, conclusion) in cases {
            let direct = entails(&sig(), &premises, &conclusion, &cfg.clone().id_only(true)).unwrap();
            let translated = id_entails_via_translation(&sig(), &premises, &conclusion, &cfg).unwrap();
            assert_eq!(direct.is_countermodel(), translated.is_countermodel(), "{conclusion}");
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let base = SearchConfig::new(3, 2);
        let premises = [f("exists x. P(x)")];
        let conclusion = f("iexists x. P(x)");
        let seq = entails(&sig(), &premises, &conclusion, &base.clone().deterministic(true)).unwrap();
        let par = entails(&sig(), &premises, &conclusion, &base.clone().workers(Some(4))).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn verdicts_round_trip_through_json() {
        let cfg = SearchConfig::new(2, 2);
        let open = parse_formula("P(x) -> P(c)", &sig()).unwrap();
        let v = valid(&sig(), &open, &cfg).unwrap();
        assert!(v.is_countermodel());
        assert_eq!(Verdict::from_json(&v.to_json()).unwrap(), v);
        let e = valid(&sig(), &Formula::top(), &cfg).unwrap();
        assert_eq!(Verdict::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn bad_bounds_and_budgets() {
        assert!(matches!(valid(&sig(), &Formula::top(), &SearchConfig::new(0, 1)), Err(LogicError::Model(ModelError::Bounds))));
        let tight = SearchConfig::new(2, 2).eval(EvalConfig::default().with_budget(0));
        assert!(matches!(valid(&sig(), &f("P(c)"), &tight), Err(LogicError::Eval(_))));
    }
}
