use std::collections::HashMap;
use std::rc::Rc;

use crate::models::{tuple_index, InfoModel, State};
use crate::syntax::Formula;

use super::compile::{CTerm, Node, NodeId, Program};
use super::stateset::{StateSet, MAX_LATTICE_WORLDS};
use super::{Assignment, EvalError};

/// How support is computed. All strategies agree on every input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Lattice for universes up to [`AUTO_LATTICE_WORLDS`] worlds, memo beyond.
    #[default]
    Auto,
    /// Direct recursion on the clauses; implication enumerates every substate.
    Naive,
    /// Recursion on the clauses with a cache keyed by node, state and the
    /// values of the node's free variables.
    Memo,
    /// Computes the set of supporting states for every subformula at once,
    /// as bitsets over the whole state lattice.
    Lattice,
}

pub const AUTO_LATTICE_WORLDS: usize = 20;

#[derive(Clone, Debug)]
pub struct EvalConfig {
    pub strategy: Strategy,
    /// In memo mode: classical subformulas are evaluated world by world, and
    /// an implication with a classical antecedent only visits substates of
    /// the antecedent's truth set.
    pub classical_shortcut: bool,
    /// Maximum number of evaluation steps before giving up.
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 1 << 32;

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { strategy: Strategy::Auto, classical_shortcut: true, budget: DEFAULT_BUDGET }
    }
}

impl EvalConfig {
    pub fn naive() -> Self {
        EvalConfig { strategy: Strategy::Naive, classical_shortcut: false, ..Default::default() }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_shortcut(mut self, on: bool) -> Self {
        self.classical_shortcut = on;
        self
    }
}

/// Support checker for one formula over one model. Caches persist across
/// calls, so asking about many states or assignments is cheap.
pub struct Evaluator<'m> {
    model: &'m InfoModel,
    prog: Program,
    strategy: Strategy,
    shortcut: bool,
    budget: u64,
    steps: u64,
    n: usize,
    worlds: usize,
    memo: HashMap<(NodeId, u64, u64), bool>,
    truth: HashMap<(NodeId, u64), u64>,
    tables: HashMap<(NodeId, u64), Rc<StateSet>>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m InfoModel, f: &Formula, cfg: &EvalConfig) -> Result<Self, EvalError> {
        let prog = Program::compile(f, model.signature())?;
        let n = model.domain_size();
        if !prog.keys_fit(n) {
            return Err(EvalError::TooManyVariables);
        }
        let worlds = model.num_worlds();
        let strategy = match cfg.strategy {
            Strategy::Auto if worlds <= AUTO_LATTICE_WORLDS => Strategy::Lattice,
            Strategy::Auto => Strategy::Memo,
            Strategy::Lattice if worlds > MAX_LATTICE_WORLDS => {
                return Err(EvalError::Budget { steps: 1u64 << worlds.min(63), limit: cfg.budget })
            }
            s => s,
        };
        Ok(Evaluator {
            model,
            prog,
            strategy,
            shortcut: cfg.classical_shortcut && strategy == Strategy::Memo,
            budget: cfg.budget,
            steps: 0,
            n,
            worlds,
            memo: HashMap::new(),
            truth: HashMap::new(),
            tables: HashMap::new(),
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Steps spent so far, across all calls.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn supports(&mut self, s: State, g: &Assignment) -> Result<bool, EvalError> {
        self.check_state(s)?;
        let mut env = self.prog.env(g, self.n)?;
        let root = self.prog.root;
        match self.strategy {
            Strategy::Lattice => Ok(self.table(root, &mut env)?.contains(s)),
            _ => self.sup(root, s, &mut env),
        }
    }

    /// All states of the model that support the formula under `g`.
    pub fn support_set(&mut self, g: &Assignment) -> Result<StateSet, EvalError> {
        if self.worlds > MAX_LATTICE_WORLDS {
            return Err(EvalError::Budget { steps: 1u64 << self.worlds.min(63), limit: self.budget });
        }
        let mut env = self.prog.env(g, self.n)?;
        let root = self.prog.root;
        if self.strategy == Strategy::Lattice {
            return Ok((*self.table(root, &mut env)?).clone());
        }
        let mut out = StateSet::empty(self.worlds);
        for s in State::all(self.worlds) {
            if self.sup(root, s, &mut env)? {
                out.insert(s);
            }
        }
        Ok(out)
    }

    fn check_state(&self, s: State) -> Result<(), EvalError> {
        if !s.is_subset(State::full(self.worlds)) {
            return Err(EvalError::InvalidState(s));
        }
        Ok(())
    }

    fn charge(&mut self, amount: u64) -> Result<(), EvalError> {
        self.steps = self.steps.saturating_add(amount);
        if self.steps > self.budget {
            return Err(EvalError::Budget { steps: self.steps, limit: self.budget });
        }
        Ok(())
    }

    fn term(&self, t: &CTerm, w: usize, env: &[u32]) -> usize {
        match t {
            CTerm::Var(s) => env[*s as usize] as usize,
            CTerm::App(f, args) => {
                let table = self.model.world(w).interpretation().function(*f as usize);
                if args.is_empty() {
                    return table.value_at(0);
                }
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, w, env)).collect();
                table.value_at(tuple_index(&vals, self.n))
            }
        }
    }

    /// Truth at a single world. Only reached for classical nodes, but the
    /// singleton readings of `V` and `iexists` are included for completeness.
    fn holds(&self, node: NodeId, w: usize, env: &mut Vec<u32>) -> bool {
        match &self.prog.nodes[node as usize] {
            Node::Atom(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, w, env)).collect();
                self.model.world(w).interpretation().predicate(*p as usize).contains(&vals, self.n)
            }
            Node::Equals(l, r) => {
                let (l, r) = (self.term(l, w, env), self.term(r, w, env));
                self.model.world(w).equality().related(l, r)
            }
            Node::Bottom => false,
            &Node::And(a, b) => self.holds(a, w, env) && self.holds(b, w, env),
            &Node::InqDisj(a, b) => self.holds(a, w, env) || self.holds(b, w, env),
            &Node::Implies(a, b) => !self.holds(a, w, env) || self.holds(b, w, env),
            &Node::Forall(x, body) => self.quantify(x, env, true, |me, env| me.holds(body, w, env)),
            &Node::InqExists(x, body) => self.quantify(x, env, false, |me, env| me.holds(body, w, env)),
        }
    }

    fn quantify(&self, x: u32, env: &mut Vec<u32>, all: bool, mut f: impl FnMut(&Self, &mut Vec<u32>) -> bool) -> bool {
        let saved = env[x as usize];
        let mut out = all;
        for d in 0..self.n {
            env[x as usize] = d as u32;
            if f(self, env) != all {
                out = !all;
                break;
            }
        }
        env[x as usize] = saved;
        out
    }

    fn truth_set(&mut self, node: NodeId, env: &mut Vec<u32>) -> Result<State, EvalError> {
        let key = (node, self.prog.key(node, env, self.n));
        if let Some(&t) = self.truth.get(&key) {
            return Ok(State(t));
        }
        self.charge(self.worlds as u64)?;
        let t = State::from_worlds((0..self.worlds).filter(|&w| self.holds(node, w, env)));
        self.truth.insert(key, t.bits());
        Ok(t)
    }

    fn sup(&mut self, node: NodeId, s: State, env: &mut Vec<u32>) -> Result<bool, EvalError> {
        self.charge(1)?;
        let cached = self.strategy == Strategy::Memo;
        if self.shortcut && self.prog.classical[node as usize] {
            return Ok(s.is_subset(self.truth_set(node, env)?));
        }
        let key = if cached {
            let k = (node, s.bits(), self.prog.key(node, env, self.n));
            if let Some(&v) = self.memo.get(&k) {
                return Ok(v);
            }
            Some(k)
        } else {
            None
        };
        let v = match self.prog.nodes[node as usize].clone() {
            Node::Atom(..) | Node::Equals(..) => s.worlds().all(|w| self.holds(node, w, env)),
            Node::Bottom => s.is_empty(),
            Node::And(a, b) => self.sup(a, s, env)? && self.sup(b, s, env)?,
            Node::InqDisj(a, b) => self.sup(a, s, env)? || self.sup(b, s, env)?,
            Node::Implies(a, b) => {
                let classical_antecedent = self.shortcut && self.prog.classical[a as usize];
                let base = if classical_antecedent { s.intersect(self.truth_set(a, env)?) } else { s };
                let mut ok = true;
                for t in base.substates() {
                    if (classical_antecedent || self.sup(a, t, env)?) && !self.sup(b, t, env)? {
                        ok = false;
                        break;
                    }
                }
                ok
            }
            Node::Forall(x, body) => self.sup_quantified(x, body, s, env, true)?,
            Node::InqExists(x, body) => self.sup_quantified(x, body, s, env, false)?,
        };
        if let Some(k) = key {
            self.memo.insert(k, v);
        }
        Ok(v)
    }

    fn sup_quantified(&mut self, x: u32, body: NodeId, s: State, env: &mut Vec<u32>, all: bool) -> Result<bool, EvalError> {
        let saved = env[x as usize];
        let mut out = all;
        for d in 0..self.n {
            env[x as usize] = d as u32;
            match self.sup(body, s, env) {
                Ok(v) if v != all => {
                    out = !all;
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    env[x as usize] = saved;
                    return Err(e);
                }
            }
        }
        env[x as usize] = saved;
        Ok(out)
    }

    fn table(&mut self, node: NodeId, env: &mut Vec<u32>) -> Result<Rc<StateSet>, EvalError> {
        let key = (node, self.prog.key(node, env, self.n));
        if let Some(t) = self.tables.get(&key) {
            return Ok(Rc::clone(t));
        }
        let k = self.worlds;
        let states = 1u64 << k;
        self.charge(states)?;
        let table = if self.prog.classical[node as usize] {
            let t = self.truth_set(node, env)?;
            StateSet::subsets_of(k, t)
        } else {
            match self.prog.nodes[node as usize].clone() {
                Node::And(a, b) => {
                    let mut t = (*self.table(a, env)?).clone();
                    t.and_assign(&*self.table(b, env)?);
                    t
                }
                Node::InqDisj(a, b) => {
                    let mut t = (*self.table(a, env)?).clone();
                    t.or_assign(&*self.table(b, env)?);
                    t
                }
                Node::Implies(a, b) => {
                    self.charge(states * k as u64)?;
                    // s fails iff some t ⊆ s supports a but not b
                    let mut bad = (*self.table(a, env)?).clone();
                    bad.and_not_assign(&*self.table(b, env)?);
                    bad.upward_closure();
                    bad.complement()
                }
                Node::Forall(x, body) => self.table_quantified(x, body, env, true)?,
                Node::InqExists(x, body) => self.table_quantified(x, body, env, false)?,
                Node::Atom(..) | Node::Equals(..) | Node::Bottom => unreachable!("classical nodes"),
            }
        };
        let table = Rc::new(table);
        self.tables.insert(key, Rc::clone(&table));
        Ok(table)
    }

    fn table_quantified(&mut self, x: u32, body: NodeId, env: &mut Vec<u32>, all: bool) -> Result<StateSet, EvalError> {
        let saved = env[x as usize];
        let mut acc = if all { StateSet::all(self.worlds) } else { StateSet::empty(self.worlds) };
        for d in 0..self.n {
            env[x as usize] = d as u32;
            let t = match self.table(body, env) {
                Ok(t) => t,
                Err(e) => {
                    env[x as usize] = saved;
                    return Err(e);
                }
            };
            if all {
                acc.and_assign(&t);
            } else {
                acc.or_assign(&t);
            }
        }
        env[x as usize] = saved;
        Ok(acc)
    }
}

/// `M, s ⊨_g φ` with the default configuration.
pub fn supports(m: &InfoModel, s: State, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    supports_with(m, s, g, f, &EvalConfig::default())
}

/// Support depends only on the worlds of `s`, so large models are first
/// restricted to them.
pub fn supports_with(m: &InfoModel, s: State, g: &Assignment, f: &Formula, cfg: &EvalConfig) -> Result<bool, EvalError> {
    if !s.is_subset(m.full_state()) {
        return Err(EvalError::InvalidState(s));
    }
    if cfg.strategy == Strategy::Naive || s == m.full_state() || s.is_empty() {
        return Evaluator::new(m, f, cfg)?.supports(s, g);
    }
    let sub = m.restrict(s)?;
    let full = sub.full_state();
    Evaluator::new(&sub, f, cfg)?.supports(full, g)
}

/// Every supporting state of `m`.
pub fn support_set(m: &InfoModel, g: &Assignment, f: &Formula, cfg: &EvalConfig) -> Result<StateSet, EvalError> {
    Evaluator::new(m, f, cfg)?.support_set(g)
}

/// Truth at `w`: support at `{w}`.
pub fn truth_at(m: &InfoModel, w: usize, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    if w >= m.num_worlds() {
        return Err(EvalError::InvalidState(State::singleton(w.min(63))));
    }
    supports(m, State::singleton(w), g, f)
}

/// Whether support of `f` at every state of `m` coincides with truth at each
/// of its worlds.
pub fn check_truth_conditional(m: &InfoModel, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    let mut ev = Evaluator::new(m, f, &EvalConfig::default())?;
    let mut truth = State::EMPTY;
    for w in 0..m.num_worlds() {
        if ev.supports(State::singleton(w), g)? {
            truth = truth.union(State::singleton(w));
        }
    }
    let set = ev.support_set(g)?;
    Ok(set == StateSet::subsets_of(m.num_worlds(), truth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{canonical_full_model, pair_world, ModelBuilder};
    use crate::syntax::{parse_formula, Signature};

    const ALL: [Strategy; 3] = [Strategy::Naive, Strategy::Memo, Strategy::Lattice];

    fn check(m: &InfoModel, s: State, text: &str) -> bool {
        let f = parse_formula(text, m.signature()).unwrap();
        let verdicts: Vec<bool> = ALL
            .iter()
            .flat_map(|&st| [true, false].map(|sc| (st, sc)))
            .map(|(st, sc)| {
                let cfg = EvalConfig::default().with_strategy(st).with_shortcut(sc);
                Evaluator::new(m, &f, &cfg).unwrap().supports(s, &Assignment::new()).unwrap()
            })
            .collect();
        assert!(verdicts.iter().all(|&v| v == verdicts[0]), "strategies disagree on {text} at {s}");
        assert_eq!(supports(m, s, &Assignment::new(), &f).unwrap(), verdicts[0]);
        verdicts[0]
    }

    fn mention_all_model() -> InfoModel {
        let sig = Signature::builder().predicate("P", 1).build().unwrap();
        let mut b = ModelBuilder::new(&sig, 2, 1);
        b.fact(0, "P", &[0]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn empty_state_supports_everything() {
        let m = mention_all_model();
        for text in ["_|_", "forall x. ?P(x)", "iexists x. P(x)", "~P(x0) & P(x0) -> _|_ V _|_"] {
            // closed formulas only
            if let Ok(f) = parse_formula(text, m.signature()) {
                if f.is_sentence() {
                    assert!(check(&m, State::EMPTY, text));
                }
            }
        }
    }

    #[test]
    fn mention_all_question() {
        let m = mention_all_model();
        assert!(!check(&m, m.full_state(), "forall x. ?P(x)"));
        assert!(check(&m, State::singleton(0), "forall x. ?P(x)"));
        assert!(check(&m, State::singleton(1), "forall x. ?P(x)"));
    }

    #[test]
    fn dependence_on_a_functional_relation() {
        let m = canonical_full_model(2).unwrap();
        let s = State::from_worlds([pair_world(0, 0, 2), pair_world(1, 1, 2)]);
        assert!(check(&m, s, "dep(a; b)"));
        assert!(!check(&m, m.full_state(), "dep(a; b)"));
    }

    #[test]
    fn paper_sentences_on_two_element_canonical_model() {
        let m = canonical_full_model(2).unwrap();
        let eta = "dep(a; b) & dep(b; a) & (iexists x. x != b) -> iexists x. x != a";
        assert!(check(&m, m.full_state(), eta));
        assert!(!check(&m, m.full_state(), "iexists x. iexists y. ~(x = a & y = b)"));
    }

    #[test]
    fn truth_at_worlds() {
        let m = mention_all_model();
        let f = parse_formula("?P(x)", m.signature()).unwrap();
        let g = Assignment::new().with("x", 0);
        for w in 0..2 {
            assert!(truth_at(&m, w, &g, &f).unwrap());
            assert!(!truth_at(&m, w, &g, &Formula::bottom()).unwrap());
        }
        assert!(!check_truth_conditional(&m, &g, &f).unwrap());
        let classical = parse_formula("exists x. P(x) -> forall y. P(y)", m.signature()).unwrap();
        assert!(check_truth_conditional(&m, &g, &classical).unwrap());
        let trivial = parse_formula("iexists x. x = x", m.signature()).unwrap();
        assert!(check_truth_conditional(&m, &g, &trivial).unwrap());
    }

    #[test]
    fn budget_and_errors() {
        let m = canonical_full_model(2).unwrap();
        let f = parse_formula("dep(a; b)", m.signature()).unwrap();
        for st in ALL {
            let cfg = EvalConfig::default().with_strategy(st).with_budget(0);
            assert!(matches!(
                Evaluator::new(&m, &f, &cfg).unwrap().supports(m.full_state(), &Assignment::new()),
                Err(EvalError::Budget { .. })
            ));
        }
        let open = parse_formula("x = a", m.signature()).unwrap();
        assert!(matches!(supports(&m, m.full_state(), &Assignment::new(), &open), Err(EvalError::UnboundVariable(_))));
        assert!(matches!(supports(&m, State(1 << 9), &Assignment::new(), &f), Err(EvalError::InvalidState(_))));
    }

    #[test]
    fn restriction_agrees_with_whole_model() {
        let m = canonical_full_model(3).unwrap();
        let f = parse_formula("dep(a; b) V dep(b; a)", m.signature()).unwrap();
        let set = support_set(&m, &Assignment::new(), &f, &EvalConfig::default()).unwrap();
        for s in State::all(9).step_by(7) {
            assert_eq!(supports(&m, s, &Assignment::new(), &f).unwrap(), set.contains(s));
        }
    }
}
