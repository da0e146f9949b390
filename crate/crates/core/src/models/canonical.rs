//! Full models over the two-constant signature and the relation a state
//! induces on the domain.

use std::collections::BTreeSet;

use crate::syntax::Signature;

use super::model::{FuncTable, InfoModel, World};
use super::partition::Partition;
use super::state::State;
use super::structure::{Structure, StructureBuilder};
use super::ModelError;

/// Id-model whose worlds all carry the structure's interpretation, plus
/// whatever extra constant values `extra(w)` supplies (appended in order
/// after the structure's own functions).
pub(crate) fn uniform_model(
    s: &Structure,
    world_names: Vec<String>,
    extra: impl Fn(usize) -> Option<Vec<usize>>,
) -> Result<InfoModel, ModelError> {
    let n = s.domain_size();
    let worlds = (0..world_names.len())
        .map(|w| {
            let mut interp = s.interp.clone();
            if let Some(values) = extra(w) {
                interp
                    .funcs
                    .extend(values.into_iter().map(|v| FuncTable { arity: 0, values: vec![v as u32] }));
            }
            World { interp, eq: Partition::discrete(n) }
        })
        .collect();
    InfoModel::from_parts(s.sig.clone(), world_names, s.domain_names.clone(), worlds)
}

fn pair_world_names(s: &Structure) -> Vec<String> {
    let names = s.domain_names();
    let mut out = Vec::new();
    for d in names {
        for e in names {
            out.push(format!("({d},{e})"));
        }
    }
    out
}

/// Index of world `(d, e)` in a canonical full model with `n` individuals.
pub fn pair_world(d: usize, e: usize, n: usize) -> usize {
    d * n + e
}

/// The full id-model over a structure: one world per pair `(d, e)` of
/// individuals, fresh non-rigid constants `a`, `b` read off the pair, and
/// every other symbol interpreted exactly as in `s` at every world.
pub fn canonical_full_extension(s: &Structure) -> Result<InfoModel, ModelError> {
    for name in ["a", "b"] {
        if s.signature().contains(name) {
            return Err(ModelError::NameClash(name.to_owned()));
        }
    }
    let sig = s.signature().with_constants(&["a", "b"]).map_err(|_| ModelError::NameClash("a".into()))?;
    let n = s.domain_size();
    let widened = Structure { sig, domain_names: s.domain_names.clone(), interp: s.interp.clone() };
    uniform_model(&widened, pair_world_names(s), |w| Some(vec![w / n, w % n]))
}

/// The canonical full id-model on `n` individuals for the signature `{a, b}`.
pub fn canonical_full_model(n: usize) -> Result<InfoModel, ModelError> {
    if n == 0 {
        return Err(ModelError::EmptyDomain);
    }
    let base = StructureBuilder::new(&Signature::default(), n).build()?;
    canonical_full_extension(&base)
}

/// `{(a_w, b_w) | w ∈ s}`.
pub fn relation_of_state(m: &InfoModel, s: State) -> Result<BTreeSet<(usize, usize)>, ModelError> {
    let mut out = BTreeSet::new();
    for name in ["a", "b"] {
        m.constant_at(0, name)?;
    }
    for w in s.worlds() {
        out.insert((m.constant_at(w, "a")?, m.constant_at(w, "b")?));
    }
    Ok(out)
}

/// Whether the pairs `(a_w, b_w)` over all worlds exhaust `D × D`.
pub fn is_full(m: &InfoModel) -> Result<bool, ModelError> {
    let n = m.domain_size();
    Ok(relation_of_state(m, m.full_state())?.len() == n * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_canonical_model() {
        let m = canonical_full_model(2).unwrap();
        assert_eq!(m.num_worlds(), 4);
        let w01 = pair_world(0, 1, 2);
        assert_eq!(m.constant_at(w01, "a").unwrap(), 0);
        assert_eq!(m.constant_at(w01, "b").unwrap(), 1);
        assert!(m.is_id_model());
        assert!(is_full(&m).unwrap());
        assert_eq!(m.world_names()[w01], "(d0,d1)");
    }

    #[test]
    fn singleton_domain_has_one_world() {
        assert_eq!(canonical_full_model(1).unwrap().num_worlds(), 1);
        assert!(matches!(canonical_full_model(0), Err(ModelError::EmptyDomain)));
    }

    #[test]
    fn relation_of_state_is_the_state_itself() {
        for n in 1..=3 {
            let m = canonical_full_model(n).unwrap();
            for s in State::all(n * n) {
                let expected: BTreeSet<(usize, usize)> = s.worlds().map(|w| (w / n, w % n)).collect();
                assert_eq!(relation_of_state(&m, s).unwrap(), expected);
            }
        }
    }

    #[test]
    fn deleting_a_world_breaks_fullness() {
        let m = canonical_full_model(2).unwrap();
        let without = m.restrict(m.full_state().without(pair_world(1, 1, 2))).unwrap();
        assert!(!is_full(&without).unwrap());
        assert!(relation_of_state(&m, State::EMPTY).unwrap().is_empty());
    }

    #[test]
    fn extension_rejects_name_clash() {
        let sig = Signature::builder().constant("a").build().unwrap();
        let mut b = StructureBuilder::new(&sig, 1);
        b.constant("a", 0).unwrap();
        assert!(matches!(canonical_full_extension(&b.build().unwrap()), Err(ModelError::NameClash(_))));
    }

    #[test]
    fn missing_constants_are_reported() {
        let s = StructureBuilder::new(&Signature::default(), 2).build().unwrap();
        let m = s.as_model();
        assert!(matches!(relation_of_state(&m, m.full_state()), Err(ModelError::MissingConstant(_))));
    }
}
