use crate::syntax::{Signature, Symbol};

use super::partition::Partition;
use super::state::{State, MAX_WORLDS};
use super::ModelError;

/// Position of `args` in the row-major enumeration of `D^arity`.
pub fn tuple_index(args: &[usize], domain: usize) -> usize {
    args.iter().fold(0, |acc, &d| acc * domain + d)
}

/// Inverse of [`tuple_index`].
pub fn tuple_at(mut index: usize, arity: usize, domain: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % domain;
        index /= domain;
    }
    out
}

pub(crate) fn table_len(arity: usize, domain: usize) -> usize {
    domain.pow(arity as u32)
}

/// Extension of one predicate: membership flag per tuple of `D^arity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub(crate) arity: usize,
    pub(crate) members: Vec<bool>,
}

impl Relation {
    pub fn empty(arity: usize, domain: usize) -> Self {
        Relation { arity, members: vec![false; table_len(arity, domain)] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn contains(&self, args: &[usize], domain: usize) -> bool {
        self.members[tuple_index(args, domain)]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members[index]
    }

    /// Member tuples in increasing order.
    pub fn tuples(&self, domain: usize) -> Vec<Vec<usize>> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .map(|i| tuple_at(i, self.arity, domain))
            .collect()
    }
}

/// A total function table over `D^arity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncTable {
    pub(crate) arity: usize,
    pub(crate) values: Vec<u32>,
}

impl FuncTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, args: &[usize], domain: usize) -> usize {
        self.values[tuple_index(args, domain)] as usize
    }

    pub fn value_at(&self, index: usize) -> usize {
        self.values[index] as usize
    }
}

/// Interpretation of every symbol of a signature over a fixed domain size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    pub(crate) preds: Vec<Relation>,
    pub(crate) funcs: Vec<FuncTable>,
}

impl Interpretation {
    pub fn predicate(&self, index: usize) -> &Relation {
        &self.preds[index]
    }

    pub fn function(&self, index: usize) -> &FuncTable {
        &self.funcs[index]
    }

    /// First congruence failure of `eq` against these tables, if any:
    /// `(symbol index kind, tuple index)` where the tuple and its
    /// representative tuple disagree.
    pub(crate) fn congruence_failure(&self, eq: &Partition, domain: usize) -> Option<(Symbol, usize)> {
        let rep_index = |index: usize, arity: usize| {
            let t: Vec<usize> = tuple_at(index, arity, domain).into_iter().map(|d| eq.rep(d)).collect();
            tuple_index(&t, domain)
        };
        for (p, rel) in self.preds.iter().enumerate() {
            for i in 0..rel.members.len() {
                if rel.members[i] != rel.members[rep_index(i, rel.arity)] {
                    return Some((Symbol::Predicate(p), i));
                }
            }
        }
        for (f, table) in self.funcs.iter().enumerate() {
            for i in 0..table.values.len() {
                let here = table.values[i] as usize;
                let there = table.values[rep_index(i, table.arity)] as usize;
                if !eq.related(here, there) {
                    return Some((Symbol::Function(f), i));
                }
            }
        }
        None
    }
}

/// One world: local interpretation plus the local equality relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World {
    pub(crate) interp: Interpretation,
    pub(crate) eq: Partition,
}

impl World {
    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    pub fn equality(&self) -> &Partition {
        &self.eq
    }
}

/// A finite first-order information model `(W, D, I, ~)`.
///
/// Values can only be obtained through [`ModelBuilder::build`] or the
/// constructions in this module, all of which validate, so every `InfoModel`
/// satisfies the congruence, rigidity and totality conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoModel {
    pub(crate) sig: Signature,
    pub(crate) world_names: Vec<String>,
    pub(crate) domain_names: Vec<String>,
    pub(crate) worlds: Vec<World>,
}

impl InfoModel {
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn num_worlds(&self) -> usize {
        self.worlds.len()
    }

    pub fn domain_size(&self) -> usize {
        self.domain_names.len()
    }

    pub fn world_names(&self) -> &[String] {
        &self.world_names
    }

    pub fn domain_names(&self) -> &[String] {
        &self.domain_names
    }

    pub fn world(&self, w: usize) -> &World {
        &self.worlds[w]
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn full_state(&self) -> State {
        State::full(self.worlds.len())
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.world_names.iter().position(|n| n == name)
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.domain_names.iter().position(|n| n == name)
    }

    /// Interpretation of a 0-ary function symbol at a world.
    pub fn constant_at(&self, w: usize, name: &str) -> Result<usize, ModelError> {
        let f = self
            .sig
            .function_index(name)
            .filter(|&f| self.sig.functions()[f].arity == 0)
            .ok_or_else(|| ModelError::MissingConstant(name.to_owned()))?;
        Ok(self.worlds[w].interp.funcs[f].values[0] as usize)
    }

    /// True iff every local equality is the identity.
    pub fn is_id_model(&self) -> bool {
        self.worlds.iter().all(|w| w.eq.is_discrete())
    }

    /// The submodel on the worlds of a non-empty state.
    pub fn restrict(&self, s: State) -> Result<InfoModel, ModelError> {
        if s.is_empty() {
            return Err(ModelError::EmptyState);
        }
        Ok(InfoModel {
            sig: self.sig.clone(),
            world_names: s.worlds().map(|w| self.world_names[w].clone()).collect(),
            domain_names: self.domain_names.clone(),
            worlds: s.worlds().map(|w| self.worlds[w].clone()).collect(),
        })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        if self.worlds.len() > MAX_WORLDS {
            return Err(ModelError::TooManyWorlds(self.worlds.len()));
        }
        let n = self.domain_names.len();
        if n == 0 {
            return Err(ModelError::EmptyDomain);
        }
        check_unique(&self.world_names, "world")?;
        check_unique(&self.domain_names, "individual")?;
        for (w, world) in self.worlds.iter().enumerate() {
            check_shapes(&self.sig, &world.interp, n)?;
            if world.eq.len() != n {
                return Err(ModelError::BadPartition(format!(
                    "equality at world {} has {} elements, domain has {n}",
                    self.world_names[w],
                    world.eq.len()
                )));
            }
            if let Some((sym, index)) = world.interp.congruence_failure(&world.eq, n) {
                let (name, arity) = match sym {
                    Symbol::Predicate(p) => (&self.sig.predicates()[p].name, self.sig.predicates()[p].arity),
                    Symbol::Function(f) => (&self.sig.functions()[f].name, self.sig.functions()[f].arity),
                };
                let tuple = tuple_at(index, arity, n);
                let related: Vec<usize> = tuple.iter().map(|&d| world.eq.rep(d)).collect();
                return Err(ModelError::Congruence {
                    world: self.world_names[w].clone(),
                    symbol: name.clone(),
                    tuple: tuple.iter().map(|&d| self.domain_names[d].clone()).collect(),
                    related: related.iter().map(|&d| self.domain_names[d].clone()).collect(),
                });
            }
        }
        for (f, sym) in self.sig.functions().iter().enumerate() {
            if !sym.rigid {
                continue;
            }
            let first = &self.worlds[0].interp.funcs[f];
            if let Some(w) = self.worlds.iter().position(|world| world.interp.funcs[f] != *first) {
                return Err(ModelError::Rigidity {
                    symbol: sym.name.clone(),
                    world: self.world_names[w].clone(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        sig: Signature,
        world_names: Vec<String>,
        domain_names: Vec<String>,
        worlds: Vec<World>,
    ) -> Result<InfoModel, ModelError> {
        let m = InfoModel { sig, world_names, domain_names, worlds };
        m.validate()?;
        Ok(m)
    }
}

fn check_unique(names: &[String], what: &str) -> Result<(), ModelError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(ModelError::DuplicateName(format!("{what} `{n}`")));
        }
    }
    Ok(())
}

pub(crate) fn check_shapes(sig: &Signature, interp: &Interpretation, n: usize) -> Result<(), ModelError> {
    let bad = |what: &str| Err(ModelError::Shape(what.to_owned()));
    if interp.preds.len() != sig.predicates().len() || interp.funcs.len() != sig.functions().len() {
        return bad("interpretation does not match the signature");
    }
    for (p, sym) in interp.preds.iter().zip(sig.predicates()) {
        if p.arity != sym.arity || p.members.len() != table_len(sym.arity, n) {
            return bad(&format!("predicate table for `{}`", sym.name));
        }
    }
    for (f, sym) in interp.funcs.iter().zip(sig.functions()) {
        if f.arity != sym.arity || f.values.len() != table_len(sym.arity, n) {
            return bad(&format!("function table for `{}`", sym.name));
        }
        if f.values.iter().any(|&v| v as usize >= n) {
            return bad(&format!("function `{}` takes a value outside the domain", sym.name));
        }
    }
    Ok(())
}

/// Checks `m` against an expected signature and all model invariants.
pub fn validate_model(m: &InfoModel, sig: &Signature) -> Result<(), ModelError> {
    if m.signature() != sig {
        return Err(ModelError::SignatureMismatch);
    }
    m.validate()
}

/// Incremental construction of an [`InfoModel`]; validation happens in
/// [`ModelBuilder::build`].
#[derive(Clone, Debug)]
pub struct ModelBuilder {
    sig: Signature,
    world_names: Vec<String>,
    domain_names: Vec<String>,
    preds: Vec<Vec<Vec<bool>>>,
    funcs: Vec<Vec<Vec<Option<u32>>>>,
    eq: Vec<Partition>,
}

impl ModelBuilder {
    /// Worlds are named `w0, w1, ...` and individuals `d0, d1, ...`.
    pub fn new(sig: &Signature, worlds: usize, domain: usize) -> Self {
        Self::with_names(
            sig,
            (0..worlds).map(|i| format!("w{i}")).collect(),
            (0..domain).map(|i| format!("d{i}")).collect(),
        )
    }

    pub fn with_names(sig: &Signature, world_names: Vec<String>, domain_names: Vec<String>) -> Self {
        let n = domain_names.len();
        let nw = world_names.len();
        let preds = (0..nw)
            .map(|_| sig.predicates().iter().map(|p| vec![false; table_len(p.arity, n)]).collect())
            .collect();
        let funcs = (0..nw)
            .map(|_| sig.functions().iter().map(|f| vec![None; table_len(f.arity, n)]).collect())
            .collect();
        ModelBuilder {
            sig: sig.clone(),
            world_names,
            domain_names,
            preds,
            funcs,
            eq: vec![Partition::discrete(n); nw],
        }
    }

    fn n(&self) -> usize {
        self.domain_names.len()
    }

    fn pred_index(&self, name: &str, arity: usize) -> Result<usize, ModelError> {
        let p = self.sig.predicate_index(name).ok_or_else(|| ModelError::UnknownSymbol(name.to_owned()))?;
        if self.sig.predicates()[p].arity != arity {
            return Err(ModelError::Shape(format!("`{name}` applied to {arity} arguments")));
        }
        Ok(p)
    }

    fn func_index(&self, name: &str, arity: usize) -> Result<usize, ModelError> {
        let f = self.sig.function_index(name).ok_or_else(|| ModelError::UnknownSymbol(name.to_owned()))?;
        if self.sig.functions()[f].arity != arity {
            return Err(ModelError::Shape(format!("`{name}` applied to {arity} arguments")));
        }
        Ok(f)
    }

    fn check_args(&self, args: &[usize]) -> Result<(), ModelError> {
        match args.iter().find(|&&d| d >= self.n()) {
            Some(d) => Err(ModelError::UnknownElement(d.to_string())),
            None => Ok(()),
        }
    }

    fn check_world(&self, w: usize) -> Result<(), ModelError> {
        if w >= self.world_names.len() {
            return Err(ModelError::UnknownWorld(w.to_string()));
        }
        Ok(())
    }

    /// Adds `args` to the extension of predicate `name` at world `w`.
    pub fn fact(&mut self, w: usize, name: &str, args: &[usize]) -> Result<&mut Self, ModelError> {
        self.check_world(w)?;
        let p = self.pred_index(name, args.len())?;
        self.check_args(args)?;
        let i = tuple_index(args, self.n());
        self.preds[w][p][i] = true;
        Ok(self)
    }

    pub fn function(&mut self, w: usize, name: &str, args: &[usize], value: usize) -> Result<&mut Self, ModelError> {
        self.check_world(w)?;
        let f = self.func_index(name, args.len())?;
        self.check_args(args)?;
        self.check_args(&[value])?;
        let i = tuple_index(args, self.n());
        self.funcs[w][f][i] = Some(value as u32);
        Ok(self)
    }

    pub fn constant(&mut self, w: usize, name: &str, value: usize) -> Result<&mut Self, ModelError> {
        self.function(w, name, &[], value)
    }

    /// Sets the same function entry at every world.
    pub fn function_everywhere(&mut self, name: &str, args: &[usize], value: usize) -> Result<&mut Self, ModelError> {
        for w in 0..self.world_names.len() {
            self.function(w, name, args, value)?;
        }
        Ok(self)
    }

    pub fn equality(&mut self, w: usize, partition: Partition) -> Result<&mut Self, ModelError> {
        self.check_world(w)?;
        if partition.len() != self.n() {
            return Err(ModelError::BadPartition("partition size differs from the domain".into()));
        }
        self.eq[w] = partition;
        Ok(self)
    }

    /// Makes `d` and `e` equal at world `w`, merging their classes.
    pub fn identify(&mut self, w: usize, d: usize, e: usize) -> Result<&mut Self, ModelError> {
        self.check_world(w)?;
        self.check_args(&[d, e])?;
        let mut blocks = self.eq[w].blocks();
        let bd = blocks.iter().position(|b| b.contains(&d)).expect("covered");
        let be = blocks.iter().position(|b| b.contains(&e)).expect("covered");
        if bd != be {
            let moved = blocks[be].clone();
            blocks[bd].extend(moved);
            blocks.remove(be);
        }
        self.eq[w] = Partition::from_blocks(self.n(), &blocks)?;
        Ok(self)
    }

    pub fn build(&self) -> Result<InfoModel, ModelError> {
        let n = self.n();
        let mut worlds = Vec::with_capacity(self.world_names.len());
        for w in 0..self.world_names.len() {
            let mut funcs = Vec::new();
            for (f, table) in self.funcs[w].iter().enumerate() {
                let arity = self.sig.functions()[f].arity;
                let mut values = Vec::with_capacity(table.len());
                for (i, v) in table.iter().enumerate() {
                    match v {
                        Some(v) => values.push(*v),
                        None => {
                            return Err(ModelError::PartialFunction {
                                world: self.world_names[w].clone(),
                                symbol: self.sig.functions()[f].name.clone(),
                                args: tuple_at(i, arity, n).iter().map(|&d| self.domain_names[d].clone()).collect(),
                            })
                        }
                    }
                }
                funcs.push(FuncTable { arity, values });
            }
            let preds = self.preds[w]
                .iter()
                .zip(self.sig.predicates())
                .map(|(members, sym)| Relation { arity: sym.arity, members: members.clone() })
                .collect();
            worlds.push(World { interp: Interpretation { preds, funcs }, eq: self.eq[w].clone() });
        }
        InfoModel::from_parts(self.sig.clone(), self.world_names.clone(), self.domain_names.clone(), worlds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary() -> Signature {
        Signature::builder().predicate("P", 1).build().unwrap()
    }

    #[test]
    fn tuple_encoding_is_row_major() {
        assert_eq!(tuple_index(&[1, 2], 3), 5);
        assert_eq!(tuple_at(5, 2, 3), vec![1, 2]);
        assert_eq!(tuple_at(0, 0, 3), Vec::<usize>::new());
    }

    #[test]
    fn discrete_partition_is_always_a_congruence() {
        let mut b = ModelBuilder::new(&unary(), 2, 3);
        b.fact(0, "P", &[1]).unwrap().fact(1, "P", &[2]).unwrap();
        let m = b.build().unwrap();
        assert!(m.is_id_model());
        assert!(validate_model(&m, &unary()).is_ok());
    }

    #[test]
    fn congruence_violation_is_reported() {
        let mut b = ModelBuilder::new(&unary(), 1, 2);
        b.fact(0, "P", &[0]).unwrap().identify(0, 0, 1).unwrap();
        match b.build() {
            Err(ModelError::Congruence { symbol, tuple, related, .. }) => {
                assert_eq!(symbol, "P");
                assert_eq!(tuple, vec!["d1"]);
                assert_eq!(related, vec!["d0"]);
            }
            other => panic!("expected congruence failure, got {other:?}"),
        }
        // repairing the extension makes the model valid but not an id-model
        b.fact(0, "P", &[1]).unwrap();
        let m = b.build().unwrap();
        assert!(!m.is_id_model());
    }

    #[test]
    fn function_congruence_and_totality() {
        let sig = Signature::builder().function("f", 1, false).build().unwrap();
        let mut b = ModelBuilder::new(&sig, 1, 3);
        assert!(matches!(b.build(), Err(ModelError::PartialFunction { .. })));
        b.function(0, "f", &[0], 0).unwrap().function(0, "f", &[1], 2).unwrap().function(0, "f", &[2], 2).unwrap();
        b.identify(0, 0, 1).unwrap();
        assert!(matches!(b.build(), Err(ModelError::Congruence { .. })));
        b.identify(0, 0, 2).unwrap();
        assert!(b.build().is_ok());
    }

    #[test]
    fn rigid_symbols_must_be_world_uniform() {
        let sig = Signature::builder().rigid_constant("c").build().unwrap();
        let mut b = ModelBuilder::new(&sig, 2, 2);
        b.constant(0, "c", 0).unwrap().constant(1, "c", 1).unwrap();
        assert!(matches!(b.build(), Err(ModelError::Rigidity { .. })));
        b.constant(1, "c", 0).unwrap();
        assert!(b.build().is_ok());
    }

    #[test]
    fn empty_universe_or_domain_rejected() {
        assert!(matches!(ModelBuilder::new(&unary(), 0, 1).build(), Err(ModelError::NoWorlds)));
        assert!(matches!(ModelBuilder::new(&unary(), 1, 0).build(), Err(ModelError::EmptyDomain)));
    }
}
