//! Formulas lowered to a hash-consed node arena with symbol indices and
//! variable slots, so evaluation never looks anything up by name.

use std::collections::HashMap;

use crate::syntax::{check_formula, Formula, FormulaKind, Signature, Term};

use super::{Assignment, EvalError};

pub(crate) type NodeId = u32;
pub(crate) type Slot = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum CTerm {
    Var(Slot),
    App(u32, Vec<CTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Atom(u32, Vec<CTerm>),
    Equals(CTerm, CTerm),
    Bottom,
    And(NodeId, NodeId),
    InqDisj(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Forall(Slot, NodeId),
    InqExists(Slot, NodeId),
}

#[derive(Clone, Debug)]
pub(crate) struct Program {
    pub nodes: Vec<Node>,
    /// Slots of each node's free variables, ascending.
    pub free: Vec<Vec<Slot>>,
    pub classical: Vec<bool>,
    pub root: NodeId,
    pub slot_names: Vec<String>,
}

impl Program {
    pub fn compile(f: &Formula, sig: &Signature) -> Result<Program, EvalError> {
        check_formula(f, sig)?;
        let mut c = Compiler { sig, p: Program::empty(), interned: HashMap::new(), slots: HashMap::new() };
        let root = c.formula(f);
        c.p.root = root;
        Ok(c.p)
    }

    fn empty() -> Program {
        Program { nodes: Vec::new(), free: Vec::new(), classical: Vec::new(), root: 0, slot_names: Vec::new() }
    }

    /// Initial environment: free variables from `g`, everything else unset.
    pub fn env(&self, g: &Assignment, domain: usize) -> Result<Vec<u32>, EvalError> {
        let mut env = vec![u32::MAX; self.slot_names.len()];
        for &slot in &self.free[self.root as usize] {
            let name = &self.slot_names[slot as usize];
            let d = g.get(name).ok_or_else(|| EvalError::UnboundVariable(name.clone()))?;
            if d >= domain {
                return Err(EvalError::ElementOutOfRange { var: name.clone(), value: d });
            }
            env[slot as usize] = d as u32;
        }
        Ok(env)
    }

    /// Mixed-radix code of the node's free variables under `env`.
    pub fn key(&self, node: NodeId, env: &[u32], domain: usize) -> u64 {
        self.free[node as usize].iter().fold(0u64, |acc, &s| acc.wrapping_mul(domain as u64) + env[s as usize] as u64)
    }

    /// Whether [`Program::key`] is injective for this domain size.
    pub fn keys_fit(&self, domain: usize) -> bool {
        let widest = self.free.iter().map(Vec::len).max().unwrap_or(0);
        (domain as u64).checked_pow(widest as u32).is_some()
    }
}

struct Compiler<'s> {
    sig: &'s Signature,
    p: Program,
    interned: HashMap<Node, NodeId>,
    slots: HashMap<String, Slot>,
}

impl Compiler<'_> {
    fn slot(&mut self, x: &str) -> Slot {
        if let Some(&s) = self.slots.get(x) {
            return s;
        }
        let s = self.p.slot_names.len() as Slot;
        self.p.slot_names.push(x.to_owned());
        self.slots.insert(x.to_owned(), s);
        s
    }

    fn term(&mut self, t: &Term, free: &mut Vec<Slot>) -> CTerm {
        match t {
            Term::Var(x) => {
                let s = self.slot(x);
                free.push(s);
                CTerm::Var(s)
            }
            Term::App(f, args) => {
                let i = self.sig.function_index(f).expect("checked against the signature") as u32;
                CTerm::App(i, args.iter().map(|a| self.term(a, free)).collect())
            }
        }
    }

    fn intern(&mut self, node: Node, mut free: Vec<Slot>, classical: bool) -> NodeId {
        if let Some(&id) = self.interned.get(&node) {
            return id;
        }
        free.sort_unstable();
        free.dedup();
        let id = self.p.nodes.len() as NodeId;
        self.p.nodes.push(node.clone());
        self.p.free.push(free);
        self.p.classical.push(classical);
        self.interned.insert(node, id);
        id
    }

    fn formula(&mut self, f: &Formula) -> NodeId {
        let mut free = Vec::new();
        let (node, classical) = match &f.kind {
            FormulaKind::Atom(p, args) => {
                let i = self.sig.predicate_index(p).expect("checked against the signature") as u32;
                (Node::Atom(i, args.iter().map(|a| self.term(a, &mut free)).collect()), true)
            }
            FormulaKind::Equals(l, r) => (Node::Equals(self.term(l, &mut free), self.term(r, &mut free)), true),
            FormulaKind::Bottom => (Node::Bottom, true),
            FormulaKind::And(a, b) | FormulaKind::InqDisj(a, b) | FormulaKind::Implies(a, b) => {
                let (a, b) = (self.formula(a), self.formula(b));
                free.extend(&self.p.free[a as usize]);
                free.extend(&self.p.free[b as usize]);
                let classical = self.p.classical[a as usize] && self.p.classical[b as usize];
                match &f.kind {
                    FormulaKind::And(..) => (Node::And(a, b), classical),
                    FormulaKind::InqDisj(..) => (Node::InqDisj(a, b), false),
                    _ => (Node::Implies(a, b), classical),
                }
            }
            FormulaKind::Forall(x, body) | FormulaKind::InqExists(x, body) => {
                let s = self.slot(x);
                let b = self.formula(body);
                free.extend(self.p.free[b as usize].iter().filter(|&&v| v != s));
                if matches!(f.kind, FormulaKind::Forall(..)) {
                    (Node::Forall(s, b), self.p.classical[b as usize])
                } else {
                    (Node::InqExists(s, b), false)
                }
            }
        };
        self.intern(node, free, classical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn shares_repeated_subformulas() {
        let sig = Signature::two_constants();
        let f = parse_formula("dep(a; b) & dep(b; a)", &sig).unwrap();
        let p = Program::compile(&f, &sig).unwrap();
        // lam(a), lam(b), their bodies and equations are stored once
        let lambdas = p.nodes.iter().filter(|n| matches!(n, Node::InqExists(..))).count();
        assert_eq!(lambdas, 2);
    }

    #[test]
    fn free_variables_and_classicality() {
        let sig = Signature::builder().predicate("P", 2).build().unwrap();
        let f = parse_formula("forall x. P(x, y) V P(y, y)", &sig).unwrap();
        let p = Program::compile(&f, &sig).unwrap();
        let root = p.root as usize;
        assert_eq!(p.free[root].len(), 1);
        assert_eq!(p.slot_names[p.free[root][0] as usize], "y");
        assert!(!p.classical[root]);
        assert!(matches!(p.env(&Assignment::new(), 2), Err(EvalError::UnboundVariable(_))));
        assert!(matches!(p.env(&Assignment::new().with("y", 5), 2), Err(EvalError::ElementOutOfRange { .. })));
    }
}
