//! Finite information models: worlds over a shared domain, each world with
//! its own interpretation and its own equality relation.
//!
//! Worlds and individuals are dense indices. States are bitmasks over
//! worlds ([`State`]), and each world's equality is a [`Partition`], so it
//! is an equivalence relation by construction; [`InfoModel::validate`]
//! checks that it is a congruence and that rigid symbols do not vary.

mod canonical;
mod enumerate;
mod json;
mod model;
mod partition;
mod quotient;
mod state;
mod structure;

pub use canonical::{canonical_full_extension, canonical_full_model, is_full, pair_world, relation_of_state};
pub use enumerate::{count_models, enumerate_models, EnumerationConfig, ModelEnumerator, Pruning};
pub use json::{model_from_json, model_from_value, model_to_json, model_to_value};
pub use model::{
    tuple_at, tuple_index, validate_model, FuncTable, InfoModel, Interpretation, ModelBuilder, Relation, World,
};
pub use partition::{all_partitions, Partition};
pub use quotient::{quotient_id_model, Quotient};
pub use state::{State, Substates, MAX_WORLDS};
pub use structure::{enumerate_structures, world_structure, Structure, StructureBuilder};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("{0} worlds exceed the limit of {MAX_WORLDS}")]
    TooManyWorlds(usize),
    #[error("the domain must be non-empty")]
    EmptyDomain,
    #[error("duplicate {0}")]
    DuplicateName(String),
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("equality at `{world}` is not a congruence for `{symbol}`: ({}) and ({}) are related but treated differently", .tuple.join(","), .related.join(","))]
    Congruence { world: String, symbol: String, tuple: Vec<String>, related: Vec<String> },
    #[error("rigid symbol `{symbol}` is interpreted differently at `{world}`")]
    Rigidity { symbol: String, world: String },
    #[error("function `{symbol}` has no value for ({}) at `{world}`", .args.join(","))]
    PartialFunction { world: String, symbol: String, args: Vec<String> },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("the model's signature differs from the expected one")]
    SignatureMismatch,
    #[error("the signature has no constant `{0}`")]
    MissingConstant(String),
    #[error("`{0}` is already declared")]
    NameClash(String),
    #[error("equality differs between `{first}` and `{other}`")]
    NonUniformEquality { first: String, other: String },
    #[error("the state is empty")]
    EmptyState,
    #[error("resource budget exceeded: {needed} needed, limit {limit}")]
    Budget { needed: u128, limit: u64 },
    #[error("model file: {0}")]
    Json(String),
    #[error("bounds must be at least 1")]
    Bounds,
}
