use crate::syntax::Signature;

use super::model::{check_shapes, table_len, tuple_at, tuple_index, FuncTable, InfoModel, Interpretation, Relation};
use super::ModelError;

/// A standard relational structure: a domain with a world-free interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub(crate) sig: Signature,
    pub(crate) domain_names: Vec<String>,
    pub(crate) interp: Interpretation,
}

impl Structure {
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn domain_size(&self) -> usize {
        self.domain_names.len()
    }

    pub fn domain_names(&self) -> &[String] {
        &self.domain_names
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    /// Member tuples of the named predicate, or `None` if it is undeclared.
    pub fn extension(&self, pred: &str) -> Option<Vec<Vec<usize>>> {
        let p = self.sig.predicate_index(pred)?;
        Some(self.interp.preds[p].tuples(self.domain_size()))
    }

    pub fn apply(&self, func: &str, args: &[usize]) -> Option<usize> {
        let f = self.sig.function_index(func)?;
        Some(self.interp.funcs[f].apply(args, self.domain_size()))
    }

    /// Forgets every symbol not in `sig`, which must be a sub-signature.
    pub fn reduct(&self, sig: &Signature) -> Result<Structure, ModelError> {
        let mut preds = Vec::new();
        for p in sig.predicates() {
            let i = self.sig.predicate_index(&p.name).ok_or_else(|| ModelError::UnknownSymbol(p.name.clone()))?;
            preds.push(self.interp.preds[i].clone());
        }
        let mut funcs = Vec::new();
        for f in sig.functions() {
            let i = self.sig.function_index(&f.name).ok_or_else(|| ModelError::UnknownSymbol(f.name.clone()))?;
            funcs.push(self.interp.funcs[i].clone());
        }
        let s = Structure { sig: sig.clone(), domain_names: self.domain_names.clone(), interp: Interpretation { preds, funcs } };
        check_shapes(&s.sig, &s.interp, s.domain_size())?;
        Ok(s)
    }

    /// The one-world id-model whose only world is this structure.
    pub fn as_model(&self) -> InfoModel {
        super::canonical::uniform_model(self, vec!["w0".to_owned()], |_| None)
            .expect("a structure is a valid one-world id-model")
    }
}

/// The structure `D/~_w` with the interpretation induced by world `w`.
///
/// Quotient classes are named and ordered by their least member.
pub fn world_structure(m: &InfoModel, w: usize) -> Structure {
    let world = m.world(w);
    let n = m.domain_size();
    let eq = &world.eq;
    let reps = eq.representatives();
    let class = eq.class_index();
    let k = reps.len();
    let preds = world
        .interp
        .preds
        .iter()
        .map(|rel| {
            let members = (0..table_len(rel.arity, k))
                .map(|i| {
                    let t: Vec<usize> = tuple_at(i, rel.arity, k).into_iter().map(|c| reps[c]).collect();
                    rel.members[tuple_index(&t, n)]
                })
                .collect();
            Relation { arity: rel.arity, members }
        })
        .collect();
    let funcs = world
        .interp
        .funcs
        .iter()
        .map(|table| {
            let values = (0..table_len(table.arity, k))
                .map(|i| {
                    let t: Vec<usize> = tuple_at(i, table.arity, k).into_iter().map(|c| reps[c]).collect();
                    class[table.values[tuple_index(&t, n)] as usize] as u32
                })
                .collect();
            FuncTable { arity: table.arity, values }
        })
        .collect();
    Structure {
        sig: m.signature().clone(),
        domain_names: reps.iter().map(|&r| m.domain_names()[r].clone()).collect(),
        interp: Interpretation { preds, funcs },
    }
}

#[derive(Clone, Debug)]
pub struct StructureBuilder {
    sig: Signature,
    domain_names: Vec<String>,
    preds: Vec<Vec<bool>>,
    funcs: Vec<Vec<Option<u32>>>,
}

impl StructureBuilder {
    pub fn new(sig: &Signature, domain: usize) -> Self {
        Self::with_names(sig, (0..domain).map(|i| format!("d{i}")).collect())
    }

    pub fn with_names(sig: &Signature, domain_names: Vec<String>) -> Self {
        let n = domain_names.len();
        StructureBuilder {
            sig: sig.clone(),
            preds: sig.predicates().iter().map(|p| vec![false; table_len(p.arity, n)]).collect(),
            funcs: sig.functions().iter().map(|f| vec![None; table_len(f.arity, n)]).collect(),
            domain_names,
        }
    }

    pub fn fact(&mut self, name: &str, args: &[usize]) -> Result<&mut Self, ModelError> {
        let n = self.domain_names.len();
        let p = self.sig.predicate_index(name).ok_or_else(|| ModelError::UnknownSymbol(name.to_owned()))?;
        if self.sig.predicates()[p].arity != args.len() || args.iter().any(|&d| d >= n) {
            return Err(ModelError::Shape(format!("bad tuple for `{name}`")));
        }
        self.preds[p][tuple_index(args, n)] = true;
        Ok(self)
    }

    pub fn function(&mut self, name: &str, args: &[usize], value: usize) -> Result<&mut Self, ModelError> {
        let n = self.domain_names.len();
        let f = self.sig.function_index(name).ok_or_else(|| ModelError::UnknownSymbol(name.to_owned()))?;
        if self.sig.functions()[f].arity != args.len() || args.iter().chain([&value]).any(|&d| d >= n) {
            return Err(ModelError::Shape(format!("bad entry for `{name}`")));
        }
        self.funcs[f][tuple_index(args, n)] = Some(value as u32);
        Ok(self)
    }

    pub fn constant(&mut self, name: &str, value: usize) -> Result<&mut Self, ModelError> {
        self.function(name, &[], value)
    }

    pub fn build(&self) -> Result<Structure, ModelError> {
        let n = self.domain_names.len();
        if n == 0 {
            return Err(ModelError::EmptyDomain);
        }
        let mut funcs = Vec::new();
        for (f, table) in self.funcs.iter().enumerate() {
            let sym = &self.sig.functions()[f];
            let values = table
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.ok_or_else(|| ModelError::PartialFunction {
                        world: String::new(),
                        symbol: sym.name.clone(),
                        args: tuple_at(i, sym.arity, n).iter().map(|&d| self.domain_names[d].clone()).collect(),
                    })
                })
                .collect::<Result<Vec<u32>, _>>()?;
            funcs.push(FuncTable { arity: sym.arity, values });
        }
        let preds = self
            .preds
            .iter()
            .zip(self.sig.predicates())
            .map(|(m, sym)| Relation { arity: sym.arity, members: m.clone() })
            .collect();
        Ok(Structure { sig: self.sig.clone(), domain_names: self.domain_names.clone(), interp: Interpretation { preds, funcs } })
    }
}

/// Every interpretation of `sig` over a domain of exactly `n` elements,
/// in lexicographic table order.
pub(crate) fn all_interpretations(sig: &Signature, n: usize, only_funcs: Option<&[bool]>) -> Vec<Interpretation> {
    // one odometer digit per table cell: predicate cells are bits, function cells range over D
    let mut radices = Vec::new();
    for p in sig.predicates() {
        radices.extend(std::iter::repeat(2).take(table_len(p.arity, n)));
    }
    for (i, f) in sig.functions().iter().enumerate() {
        let active = only_funcs.map_or(true, |mask| mask[i]);
        let r = if active { n } else { 1 };
        radices.extend(std::iter::repeat(r).take(table_len(f.arity, n)));
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; radices.len()];
    loop {
        let mut cursor = 0;
        let preds = sig
            .predicates()
            .iter()
            .map(|p| {
                let len = table_len(p.arity, n);
                let members = digits[cursor..cursor + len].iter().map(|&b| b == 1).collect();
                cursor += len;
                Relation { arity: p.arity, members }
            })
            .collect();
        let funcs = sig
            .functions()
            .iter()
            .map(|f| {
                let len = table_len(f.arity, n);
                let values = digits[cursor..cursor + len].iter().map(|&v| v as u32).collect();
                cursor += len;
                FuncTable { arity: f.arity, values }
            })
            .collect();
        out.push(Interpretation { preds, funcs });
        // increment, last digit fastest
        let mut i = radices.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Number of interpretations of `sig` over `n` elements, or `None` on overflow.
pub(crate) fn count_interpretations(sig: &Signature, n: usize) -> Option<u128> {
    let mut total: u128 = 1;
    for p in sig.predicates() {
        let cells = u32::try_from(table_len(p.arity, n)).ok()?;
        total = total.checked_mul(2u128.checked_pow(cells)?)?;
    }
    for f in sig.functions() {
        let cells = u32::try_from(table_len(f.arity, n)).ok()?;
        total = total.checked_mul((n as u128).checked_pow(cells)?)?;
    }
    Some(total)
}

/// All structures for `sig` with domain size `1..=max_domain`, smallest first.
pub fn enumerate_structures(sig: &Signature, max_domain: usize, limit: u64) -> Result<Vec<Structure>, ModelError> {
    let mut total: u128 = 0;
    for n in 1..=max_domain {
        total += count_interpretations(sig, n).ok_or(ModelError::Budget { needed: u128::MAX, limit })?;
    }
    if total > limit as u128 {
        return Err(ModelError::Budget { needed: total, limit });
    }
    let mut out = Vec::new();
    for n in 1..=max_domain {
        let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
        for interp in all_interpretations(sig, n, None) {
            out.push(Structure { sig: sig.clone(), domain_names: names.clone(), interp });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::ModelBuilder;
    use super::*;

    #[test]
    fn id_world_structure_is_the_local_interpretation() {
        let sig = Signature::builder().predicate("P", 1).constant("c").build().unwrap();
        let mut b = ModelBuilder::new(&sig, 2, 3);
        b.fact(0, "P", &[2]).unwrap().constant(0, "c", 1).unwrap().constant(1, "c", 0).unwrap();
        let m = b.build().unwrap();
        let s = world_structure(&m, 0);
        assert_eq!(s.domain_size(), 3);
        assert_eq!(s.extension("P").unwrap(), vec![vec![2]]);
        assert_eq!(s.apply("c", &[]), Some(1));
    }

    #[test]
    fn collapsed_world_gives_singleton_structure() {
        let sig = Signature::default();
        let mut b = ModelBuilder::new(&sig, 1, 2);
        b.identify(0, 0, 1).unwrap();
        let m = b.build().unwrap();
        let s = world_structure(&m, 0);
        assert_eq!(s.domain_size(), 1);
        assert_eq!(s.domain_names(), &["d0".to_owned()]);
    }

    #[test]
    fn quotient_structure_induces_tables() {
        let sig = Signature::builder().predicate("P", 1).function("f", 1, false).build().unwrap();
        let mut b = ModelBuilder::new(&sig, 1, 3);
        b.fact(0, "P", &[1]).unwrap().fact(0, "P", &[2]).unwrap();
        for (x, y) in [(0, 1), (1, 0), (2, 0)] {
            b.function(0, "f", &[x], y).unwrap();
        }
        b.identify(0, 1, 2).unwrap();
        let s = world_structure(&b.build().unwrap(), 0);
        assert_eq!(s.domain_size(), 2);
        assert_eq!(s.extension("P").unwrap(), vec![vec![1]]);
        assert_eq!(s.apply("f", &[0]), Some(1));
        assert_eq!(s.apply("f", &[1]), Some(0));
    }

    #[test]
    fn structure_enumeration_counts() {
        let sig = Signature::builder().predicate("P", 1).constant("c").build().unwrap();
        // n=1: 2*1, n=2: 4*2
        assert_eq!(enumerate_structures(&sig, 2, 1000).unwrap().len(), 10);
        assert!(enumerate_structures(&sig, 2, 5).is_err());
    }
}
