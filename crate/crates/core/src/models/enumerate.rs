//! Exhaustive enumeration of information models up to size bounds.
//!
//! Models come out ordered by domain size, then number of worlds, then the
//! rigid part of the interpretation, then the per-world tables. Worlds are
//! drawn from a list of admissible local interpretations (an equality
//! relation plus tables congruent with it), so every output is valid without
//! a separate check.

use crate::syntax::Signature;

use super::model::{tuple_at, tuple_index, FuncTable, InfoModel, Interpretation, Relation, World};
use super::partition::{all_partitions, Partition};
use super::state::MAX_WORLDS;
use super::structure::{all_interpretations, count_interpretations};
use super::ModelError;

/// How aggressively isomorphic models are skipped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pruning {
    /// Every tuple of worlds, in every order.
    None,
    /// Worlds as a multiset: permuting worlds never changes support, so only
    /// non-decreasing world tuples are produced.
    #[default]
    WorldOrder,
    /// Additionally keep one model per orbit under permutations of the domain.
    Full,
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub max_worlds: usize,
    pub max_domain: usize,
    pub id_only: bool,
    pub pruning: Pruning,
    /// Upper bound on the number of models the enumeration may produce.
    pub max_models: u64,
}

impl EnumerationConfig {
    pub fn new(max_worlds: usize, max_domain: usize) -> Self {
        EnumerationConfig { max_worlds, max_domain, id_only: false, pruning: Pruning::default(), max_models: 50_000_000 }
    }

    pub fn id_only(mut self, id_only: bool) -> Self {
        self.id_only = id_only;
        self
    }

    pub fn pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn max_models(mut self, max_models: u64) -> Self {
        self.max_models = max_models;
        self
    }
}

/// Caps the number of admissible local interpretations held in memory.
const MAX_LOCAL: u128 = 4_000_000;
/// Domain pruning tries all `n!` permutations; beyond this it is skipped.
const MAX_PERMUTED_DOMAIN: usize = 6;

struct Level {
    n: usize,
    domain_names: Vec<String>,
    /// For each rigid assignment, the admissible worlds in increasing order.
    locals: Vec<Vec<World>>,
    perms: Vec<Vec<usize>>,
}

pub struct ModelEnumerator {
    sig: Signature,
    cfg: EnumerationConfig,
    levels: Vec<Level>,
    level: usize,
    worlds: usize,
    rigid: usize,
    tuple: Option<Vec<usize>>,
}

/// Streams every valid model within the bounds (one per isomorphism class
/// at most, under [`Pruning::Full`]; at least one per class always).
pub fn enumerate_models(sig: &Signature, cfg: &EnumerationConfig) -> Result<ModelEnumerator, ModelError> {
    if cfg.max_worlds == 0 || cfg.max_domain == 0 {
        return Err(ModelError::Bounds);
    }
    if cfg.max_worlds > MAX_WORLDS {
        return Err(ModelError::TooManyWorlds(cfg.max_worlds));
    }
    let mut levels = Vec::new();
    let mut total: u128 = 0;
    for n in 1..=cfg.max_domain {
        let level = build_level(sig, n, cfg)?;
        for locals in &level.locals {
            let l = locals.len() as u128;
            for w in 1..=cfg.max_worlds {
                let count = match cfg.pruning {
                    Pruning::None => l.checked_pow(w as u32),
                    _ => multisets(l, w as u128),
                };
                total = total.saturating_add(count.unwrap_or(u128::MAX));
            }
        }
        levels.push(level);
    }
    if total > cfg.max_models as u128 {
        return Err(ModelError::Budget { needed: total, limit: cfg.max_models });
    }
    let mut e = ModelEnumerator {
        sig: sig.clone(),
        cfg: cfg.clone(),
        levels,
        level: 0,
        worlds: 1,
        rigid: 0,
        tuple: None,
    };
    e.tuple = e.first_tuple();
    Ok(e)
}

/// Number of models the enumerator will produce, counted by running it.
pub fn count_models(sig: &Signature, cfg: &EnumerationConfig) -> Result<u64, ModelError> {
    Ok(enumerate_models(sig, cfg)?.count() as u64)
}

fn multisets(l: u128, w: u128) -> Option<u128> {
    // C(l + w - 1, w)
    if l == 0 {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..w {
        acc = acc.checked_mul(l + i)? / (i + 1);
    }
    Some(acc)
}

fn build_level(sig: &Signature, n: usize, cfg: &EnumerationConfig) -> Result<Level, ModelError> {
    let partitions = if cfg.id_only { vec![Partition::discrete(n)] } else { all_partitions(n) };
    let count = count_interpretations(sig, n).unwrap_or(u128::MAX);
    let bound = count.saturating_mul(partitions.len() as u128);
    if bound > MAX_LOCAL {
        return Err(ModelError::Budget { needed: bound, limit: MAX_LOCAL as u64 });
    }
    let rigid_mask: Vec<bool> = sig.functions().iter().map(|f| f.rigid).collect();
    let local_mask: Vec<bool> = rigid_mask.iter().map(|r| !r).collect();
    let rigid_sig = Signature::new(vec![], sig.functions().iter().filter(|f| f.rigid).cloned().collect())
        .expect("sub-signature of a valid signature");
    let rigid_choices = all_interpretations(&rigid_sig, n, None);
    let local_tables = all_interpretations(sig, n, Some(&local_mask));
    let mut locals = Vec::with_capacity(rigid_choices.len());
    for rigid in &rigid_choices {
        let mut worlds = Vec::new();
        for base in &local_tables {
            let mut interp = base.clone();
            let mut r = rigid.funcs.iter();
            for (i, is_rigid) in rigid_mask.iter().enumerate() {
                if *is_rigid {
                    interp.funcs[i] = r.next().expect("one table per rigid symbol").clone();
                }
            }
            for eq in &partitions {
                if interp.congruence_failure(eq, n).is_none() {
                    worlds.push(World { interp: interp.clone(), eq: eq.clone() });
                }
            }
        }
        worlds.sort();
        locals.push(worlds);
    }
    let perms = if cfg.pruning == Pruning::Full && n <= MAX_PERMUTED_DOMAIN { permutations(n) } else { Vec::new() };
    Ok(Level { n, domain_names: (0..n).map(|i| format!("d{i}")).collect(), locals, perms })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    // the identity adds nothing
    out.remove(0);
    out
}

fn permute_world(w: &World, perm: &[usize], n: usize) -> World {
    let preds = w
        .interp
        .preds
        .iter()
        .map(|rel| {
            let mut members = vec![false; rel.members.len()];
            for (i, &m) in rel.members.iter().enumerate() {
                let t: Vec<usize> = tuple_at(i, rel.arity, n).into_iter().map(|d| perm[d]).collect();
                members[tuple_index(&t, n)] = m;
            }
            Relation { arity: rel.arity, members }
        })
        .collect();
    let funcs = w
        .interp
        .funcs
        .iter()
        .map(|table| {
            let mut values = vec![0; table.values.len()];
            for (i, &v) in table.values.iter().enumerate() {
                let t: Vec<usize> = tuple_at(i, table.arity, n).into_iter().map(|d| perm[d]).collect();
                values[tuple_index(&t, n)] = perm[v as usize] as u32;
            }
            FuncTable { arity: table.arity, values }
        })
        .collect();
    let blocks: Vec<Vec<usize>> =
        w.eq.blocks().into_iter().map(|b| b.into_iter().map(|d| perm[d]).collect()).collect();
    World {
        interp: Interpretation { preds, funcs },
        eq: Partition::from_blocks(n, &blocks).expect("permuted partition"),
    }
}

impl ModelEnumerator {
    fn current_locals(&self) -> Option<&Vec<World>> {
        self.levels.get(self.level)?.locals.get(self.rigid)
    }

    fn first_tuple(&self) -> Option<Vec<usize>> {
        let l = self.current_locals()?.len();
        (l > 0).then(|| vec![0; self.worlds])
    }

    fn advance_tuple(&self, tuple: &mut [usize]) -> bool {
        let l = self.current_locals().map_or(0, Vec::len);
        let sorted = self.cfg.pruning != Pruning::None;
        let mut i = tuple.len();
        while i > 0 {
            i -= 1;
            if tuple[i] + 1 < l {
                tuple[i] += 1;
                for j in i + 1..tuple.len() {
                    tuple[j] = if sorted { tuple[i] } else { 0 };
                }
                return true;
            }
        }
        false
    }

    // moves to the next (rigid, worlds, level) block with a non-empty local list
    fn advance_block(&mut self) -> bool {
        loop {
            let Some(level) = self.levels.get(self.level) else { return false };
            self.rigid += 1;
            if self.rigid >= level.locals.len() {
                self.rigid = 0;
                self.worlds += 1;
                if self.worlds > self.cfg.max_worlds {
                    self.worlds = 1;
                    self.level += 1;
                    if self.level >= self.levels.len() {
                        return false;
                    }
                }
            }
            if let Some(t) = self.first_tuple() {
                self.tuple = Some(t);
                return true;
            }
        }
    }

    fn is_canonical(&self, worlds: &[World]) -> bool {
        let level = &self.levels[self.level];
        level.perms.iter().all(|perm| {
            let mut image: Vec<World> = worlds.iter().map(|w| permute_world(w, perm, level.n)).collect();
            image.sort();
            worlds <= image.as_slice()
        })
    }
}

impl Iterator for ModelEnumerator {
    type Item = InfoModel;

    fn next(&mut self) -> Option<InfoModel> {
        loop {
            let mut tuple = match self.tuple.take() {
                Some(t) => t,
                None => {
                    if self.level >= self.levels.len() || !self.advance_block() {
                        self.level = self.levels.len();
                        return None;
                    }
                    self.tuple.take().expect("advance_block sets a tuple")
                }
            };
            let locals = self.current_locals().expect("valid cursor");
            let worlds: Vec<World> = tuple.iter().map(|&i| locals[i].clone()).collect();
            if self.advance_tuple(&mut tuple) {
                self.tuple = Some(tuple);
            }
            if self.cfg.pruning == Pruning::Full && !self.is_canonical(&worlds) {
                continue;
            }
            let level = &self.levels[self.level];
            let model = InfoModel {
                sig: self.sig.clone(),
                world_names: (0..worlds.len()).map(|i| format!("w{i}")).collect(),
                domain_names: level.domain_names.clone(),
                worlds,
            };
            debug_assert!(model.validate().is_ok());
            return Some(model);
        }
    }
}
