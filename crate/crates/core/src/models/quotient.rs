use super::model::{InfoModel, World};
use super::partition::Partition;
use super::state::State;
use super::structure::world_structure;
use super::ModelError;

/// Result of collapsing a state with rigid equality into an id-model.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Id-model whose worlds are the worlds of the state, in order.
    pub model: InfoModel,
    /// The full state of `model`.
    pub state: State,
    /// Class index in `model` of each individual of the original model.
    pub class_of: Vec<usize>,
}

impl Quotient {
    /// Maps an individual of the original model to its class.
    pub fn map_element(&self, d: usize) -> usize {
        self.class_of[d]
    }
}

/// Collapses `s` into an id-model over `D/~`.
///
/// Requires every world of `s` to carry the same equality relation, which is
/// exactly what support of `forall x. forall y. ?(x = y)` at `s` amounts to.
/// The state must be non-empty, since a model needs at least one world.
pub fn quotient_id_model(m: &InfoModel, s: State) -> Result<Quotient, ModelError> {
    let mut worlds = s.worlds();
    let first = worlds.next().ok_or(ModelError::EmptyState)?;
    if s.worlds().any(|w| w >= m.num_worlds()) {
        return Err(ModelError::UnknownWorld(format!("{s}")));
    }
    let eq = m.world(first).equality().clone();
    if let Some(w) = worlds.find(|&w| *m.world(w).equality() != eq) {
        return Err(ModelError::NonUniformEquality {
            first: m.world_names()[first].clone(),
            other: m.world_names()[w].clone(),
        });
    }
    let class_of = eq.class_index();
    let k = eq.representatives().len();
    let mut domain_names = Vec::new();
    let mut new_worlds = Vec::new();
    for w in s.worlds() {
        let local = world_structure(m, w);
        if domain_names.is_empty() {
            domain_names = local.domain_names.clone();
        }
        new_worlds.push(World { interp: local.interp, eq: Partition::discrete(k) });
    }
    let model = InfoModel::from_parts(
        m.signature().clone(),
        s.worlds().map(|w| m.world_names()[w].clone()).collect(),
        domain_names,
        new_worlds,
    )?;
    let state = model.full_state();
    Ok(Quotient { model, state, class_of })
}

#[cfg(test)]
mod tests {
    use super::super::ModelBuilder;
    use super::*;
    use crate::syntax::Signature;

    #[test]
    fn collapses_identified_pair() {
        let mut b = ModelBuilder::new(&Signature::default(), 1, 2);
        b.identify(0, 0, 1).unwrap();
        let q = quotient_id_model(&b.build().unwrap(), State::full(1)).unwrap();
        assert_eq!(q.model.domain_size(), 1);
        assert!(q.model.is_id_model());
        assert_eq!(q.class_of, vec![0, 0]);
    }

    #[test]
    fn id_model_quotient_is_a_copy() {
        let sig = Signature::builder().predicate("P", 1).build().unwrap();
        let mut b = ModelBuilder::new(&sig, 2, 2);
        b.fact(0, "P", &[0]).unwrap().fact(1, "P", &[1]).unwrap();
        let m = b.build().unwrap();
        let q = quotient_id_model(&m, m.full_state()).unwrap();
        assert_eq!(q.model, m);
    }

    #[test]
    fn rejects_non_uniform_equality_and_empty_state() {
        let mut b = ModelBuilder::new(&Signature::default(), 2, 2);
        b.identify(1, 0, 1).unwrap();
        let m = b.build().unwrap();
        assert!(matches!(quotient_id_model(&m, m.full_state()), Err(ModelError::NonUniformEquality { .. })));
        assert!(quotient_id_model(&m, State::singleton(1)).is_ok());
        assert!(matches!(quotient_id_model(&m, State::EMPTY), Err(ModelError::EmptyState)));
    }
}
