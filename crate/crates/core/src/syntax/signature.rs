use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::SyntaxError;

/// Words the formula grammar reserves; no symbol may use them as a name.
pub const KEYWORDS: &[&str] = &["forall", "iexists", "exists", "lam", "mu", "dep", "V"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PredicateSymbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionSymbol {
    pub name: String,
    pub arity: usize,
    #[serde(default)]
    pub rigid: bool,
}

/// What a name resolves to in a [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Predicate(usize),
    Function(usize),
}

/// Predicate and function symbols with their arities.
///
/// Names are unique across both lists, so a bare identifier resolves to at
/// most one symbol. Function symbols of arity zero are constants. Each
/// function symbol is either rigid (same interpretation in every world) or
/// non-rigid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SignatureDef", into = "SignatureDef")]
pub struct Signature {
    predicates: Vec<PredicateSymbol>,
    functions: Vec<FunctionSymbol>,
}

#[derive(Serialize, Deserialize)]
struct SignatureDef {
    #[serde(default)]
    predicates: Vec<PredicateSymbol>,
    #[serde(default)]
    functions: Vec<FunctionSymbol>,
}

impl TryFrom<SignatureDef> for Signature {
    type Error = SyntaxError;

    fn try_from(def: SignatureDef) -> Result<Self, Self::Error> {
        Signature::new(def.predicates, def.functions)
    }
}

impl From<Signature> for SignatureDef {
    fn from(sig: Signature) -> Self {
        SignatureDef { predicates: sig.predicates, functions: sig.functions }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new(
        predicates: Vec<PredicateSymbol>,
        functions: Vec<FunctionSymbol>,
    ) -> Result<Self, SyntaxError> {
        let mut seen = HashSet::new();
        let names = predicates.iter().map(|p| &p.name).chain(functions.iter().map(|f| &f.name));
        for name in names {
            if !is_identifier(name) || KEYWORDS.contains(&name.as_str()) {
                return Err(SyntaxError::InvalidSymbolName { name: name.clone() });
            }
            if !seen.insert(name) {
                return Err(SyntaxError::DuplicateSymbol { name: name.clone() });
            }
        }
        Ok(Signature { predicates, functions })
    }

    pub fn builder() -> SignatureBuilder {
        SignatureBuilder::default()
    }

    /// The signature with exactly two non-rigid constants `a` and `b`.
    pub fn two_constants() -> Self {
        Signature::builder().constant("a").constant("b").build().expect("valid signature")
    }

    pub fn predicates(&self) -> &[PredicateSymbol] {
        &self.predicates
    }

    pub fn functions(&self) -> &[FunctionSymbol] {
        &self.functions
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        if let Some(i) = self.predicates.iter().position(|p| p.name == name) {
            return Some(Symbol::Predicate(i));
        }
        self.functions.iter().position(|f| f.name == name).map(Symbol::Function)
    }

    pub fn predicate_index(&self, name: &str) -> Option<usize> {
        self.predicates.iter().position(|p| p.name == name)
    }

    pub fn function_index(&self, name: &str) -> Option<usize> {
        self.functions.iter().position(|f| f.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    /// Adds non-rigid constants, failing if any name is already taken.
    pub fn with_constants(&self, names: &[&str]) -> Result<Self, SyntaxError> {
        let mut functions = self.functions.clone();
        for name in names {
            functions.push(FunctionSymbol { name: (*name).to_owned(), arity: 0, rigid: false });
        }
        Signature::new(self.predicates.clone(), functions)
    }

    /// Union of two signatures; a name declared in both must agree exactly.
    pub fn merge(&self, other: &Signature) -> Result<Self, SyntaxError> {
        let mut predicates = self.predicates.clone();
        let mut functions = self.functions.clone();
        for p in &other.predicates {
            match self.lookup(&p.name) {
                None => predicates.push(p.clone()),
                Some(Symbol::Predicate(i)) if self.predicates[i] == *p => {}
                Some(_) => return Err(SyntaxError::DuplicateSymbol { name: p.name.clone() }),
            }
        }
        for f in &other.functions {
            match self.lookup(&f.name) {
                None => functions.push(f.clone()),
                Some(Symbol::Function(i)) if self.functions[i] == *f => {}
                Some(_) => return Err(SyntaxError::DuplicateSymbol { name: f.name.clone() }),
            }
        }
        Signature::new(predicates, functions)
    }

    /// The symbols of `self` named in `names`, in declaration order.
    pub fn restrict(&self, names: &[String]) -> Signature {
        let keep = |n: &String| names.contains(n);
        Signature {
            predicates: self.predicates.iter().filter(|p| keep(&p.name)).cloned().collect(),
            functions: self.functions.iter().filter(|f| keep(&f.name)).cloned().collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("signature serializes")
    }
}

#[derive(Debug, Default)]
pub struct SignatureBuilder {
    predicates: Vec<PredicateSymbol>,
    functions: Vec<FunctionSymbol>,
}

impl SignatureBuilder {
    pub fn predicate(mut self, name: &str, arity: usize) -> Self {
        self.predicates.push(PredicateSymbol { name: name.to_owned(), arity });
        self
    }

    pub fn function(mut self, name: &str, arity: usize, rigid: bool) -> Self {
        self.functions.push(FunctionSymbol { name: name.to_owned(), arity, rigid });
        self
    }

    /// A non-rigid constant.
    pub fn constant(self, name: &str) -> Self {
        self.function(name, 0, false)
    }

    pub fn rigid_constant(self, name: &str) -> Self {
        self.function(name, 0, true)
    }

    pub fn build(self) -> Result<Signature, SyntaxError> {
        Signature::new(self.predicates, self.functions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_across_lists() {
        let err = Signature::builder().predicate("P", 1).constant("P").build().unwrap_err();
        assert_eq!(err, SyntaxError::DuplicateSymbol { name: "P".into() });
    }

    #[test]
    fn keywords_are_rejected() {
        assert!(Signature::builder().predicate("V", 1).build().is_err());
        assert!(Signature::builder().constant("forall").build().is_err());
        assert!(Signature::builder().constant("1a").build().is_err());
    }

    #[test]
    fn json_roundtrip_and_rigid_default() {
        let sig = Signature::from_json(
            r#"{"predicates":[{"name":"P","arity":1}],"functions":[{"name":"c","arity":0}]}"#,
        )
        .unwrap();
        assert!(!sig.functions()[0].rigid);
        assert_eq!(Signature::from_json(&sig.to_json()).unwrap(), sig);
        assert!(Signature::from_json(r#"{"predicates":[{"name":"P","arity":1},{"name":"P","arity":2}]}"#).is_err());
    }

    #[test]
    fn merge_accepts_identical_and_rejects_clashes() {
        let a = Signature::builder().predicate("P", 1).build().unwrap();
        let b = Signature::builder().predicate("P", 1).constant("c").build().unwrap();
        assert_eq!(a.merge(&b).unwrap().functions().len(), 1);
        let c = Signature::builder().predicate("P", 2).build().unwrap();
        assert!(a.merge(&c).is_err());
    }
}
