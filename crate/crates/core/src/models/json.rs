//! Model files.
//!
//! ```json
//! {
//!   "signature": { "predicates": [{"name": "P", "arity": 1}],
//!                  "functions": [{"name": "c", "arity": 0}] },
//!   "worlds": ["w1", "w2"],
//!   "domain": ["d", "e"],
//!   "interp": { "w1": { "P": [["d"]], "c": "d" },
//!               "w2": { "P": [["e"]], "c": "e" } },
//!   "eqrel": { "w2": [["d", "e"]] }
//! }
//! ```
//!
//! Predicate tables list the tuples in the extension (`[[]]` makes a
//! proposition true). Constants map to an element name; other functions to a
//! list of `[[args...], value]` entries covering every argument tuple.
//! Missing `eqrel` entries are the identity, and elements left out of every
//! block are singletons.

use serde_json::{json, Map, Value};

use crate::syntax::Signature;

use super::model::{tuple_at, InfoModel, ModelBuilder};
use super::partition::Partition;
use super::ModelError;

fn bad(msg: impl Into<String>) -> ModelError {
    ModelError::Json(msg.into())
}

fn names(v: Option<&Value>, field: &str) -> Result<Vec<String>, ModelError> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| bad(format!("`{field}` must be a list of names")))?;
    arr.iter()
        .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| bad(format!("`{field}` entries must be strings"))))
        .collect()
}

fn element(domain: &[String], v: &Value) -> Result<usize, ModelError> {
    let name = v.as_str().ok_or_else(|| bad(format!("expected an element name, found {v}")))?;
    domain.iter().position(|d| d == name).ok_or_else(|| ModelError::UnknownElement(name.to_owned()))
}

fn tuple(domain: &[String], v: &Value) -> Result<Vec<usize>, ModelError> {
    let arr = v.as_array().ok_or_else(|| bad(format!("expected a tuple, found {v}")))?;
    arr.iter().map(|x| element(domain, x)).collect()
}

/// Parses a model file. `sig` is used when the file has no `signature`.
pub fn model_from_value(v: &Value, sig: Option<&Signature>) -> Result<InfoModel, ModelError> {
    let obj = v.as_object().ok_or_else(|| bad("a model must be a JSON object"))?;
    let sig = match (obj.get("signature"), sig) {
        (Some(s), _) => serde_json::from_value::<Signature>(s.clone()).map_err(|e| bad(e.to_string()))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(bad("no signature given")),
    };
    let worlds = names(obj.get("worlds"), "worlds")?;
    let domain = names(obj.get("domain"), "domain")?;
    if worlds.is_empty() {
        return Err(ModelError::NoWorlds);
    }
    if domain.is_empty() {
        return Err(ModelError::EmptyDomain);
    }
    let world_of = |name: &str| worlds.iter().position(|w| w == name).ok_or_else(|| ModelError::UnknownWorld(name.to_owned()));
    let mut b = ModelBuilder::with_names(&sig, worlds.clone(), domain.clone());
    if let Some(interp) = obj.get("interp") {
        let interp = interp.as_object().ok_or_else(|| bad("`interp` must map worlds to tables"))?;
        for (wname, tables) in interp {
            let w = world_of(wname)?;
            let tables = tables.as_object().ok_or_else(|| bad(format!("tables of `{wname}` must be an object")))?;
            for (sym, table) in tables {
                if sig.predicate_index(sym).is_some() {
                    let rows = table.as_array().ok_or_else(|| bad(format!("`{sym}` must be a list of tuples")))?;
                    for row in rows {
                        b.fact(w, sym, &tuple(&domain, row)?)?;
                    }
                } else if let Some(f) = sig.function_index(sym) {
                    if sig.functions()[f].arity == 0 && table.is_string() {
                        b.function(w, sym, &[], element(&domain, table)?)?;
                        continue;
                    }
                    let rows = table.as_array().ok_or_else(|| bad(format!("`{sym}` must be a list of entries")))?;
                    for row in rows {
                        match row.as_array().map(Vec::as_slice) {
                            Some([args, value]) => {
                                b.function(w, sym, &tuple(&domain, args)?, element(&domain, value)?)?;
                            }
                            _ => return Err(bad(format!("entries of `{sym}` must be [[args...], value]"))),
                        }
                    }
                } else {
                    return Err(ModelError::UnknownSymbol(sym.clone()));
                }
            }
        }
    }
    if let Some(eqrel) = obj.get("eqrel") {
        let eqrel = eqrel.as_object().ok_or_else(|| bad("`eqrel` must map worlds to blocks"))?;
        for (wname, blocks) in eqrel {
            let w = world_of(wname)?;
            let blocks = blocks.as_array().ok_or_else(|| bad(format!("blocks of `{wname}` must be a list")))?;
            let mut parsed = blocks.iter().map(|blk| tuple(&domain, blk)).collect::<Result<Vec<_>, _>>()?;
            let mentioned: Vec<usize> = parsed.iter().flatten().copied().collect();
            parsed.extend((0..domain.len()).filter(|d| !mentioned.contains(d)).map(|d| vec![d]));
            b.equality(w, Partition::from_blocks(domain.len(), &parsed)?)?;
        }
    }
    b.build()
}

pub fn model_from_json(text: &str, sig: Option<&Signature>) -> Result<InfoModel, ModelError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    model_from_value(&v, sig)
}

/// The model as a file, always including its signature.
pub fn model_to_value(m: &InfoModel) -> Value {
    let sig = m.signature();
    let n = m.domain_size();
    let dn = m.domain_names();
    let names_of = |t: &[usize]| Value::from(t.iter().map(|&d| dn[d].clone()).collect::<Vec<_>>());
    let mut interp = Map::new();
    let mut eqrel = Map::new();
    for (w, world) in m.worlds().iter().enumerate() {
        let mut tables = Map::new();
        for (p, sym) in sig.predicates().iter().enumerate() {
            let rows: Vec<Value> = world.interpretation().predicate(p).tuples(n).iter().map(|t| names_of(t)).collect();
            tables.insert(sym.name.clone(), Value::from(rows));
        }
        for (f, sym) in sig.functions().iter().enumerate() {
            let table = world.interpretation().function(f);
            let value = if sym.arity == 0 {
                Value::from(dn[table.value_at(0)].clone())
            } else {
                let len = n.pow(sym.arity as u32);
                Value::from(
                    (0..len)
                        .map(|i| json!([names_of(&tuple_at(i, sym.arity, n)), dn[table.value_at(i)].clone()]))
                        .collect::<Vec<_>>(),
                )
            };
            tables.insert(sym.name.clone(), value);
        }
        let wname = m.world_names()[w].clone();
        interp.insert(wname.clone(), Value::Object(tables));
        if !world.equality().is_discrete() {
            let blocks: Vec<Value> = world.equality().blocks().iter().map(|b| names_of(b)).collect();
            eqrel.insert(wname, Value::from(blocks));
        }
    }
    let mut out = Map::new();
    out.insert("signature".into(), serde_json::to_value(sig).expect("signatures serialize"));
    out.insert("worlds".into(), Value::from(m.world_names().to_vec()));
    out.insert("domain".into(), Value::from(dn.to_vec()));
    out.insert("interp".into(), Value::Object(interp));
    if !eqrel.is_empty() {
        out.insert("eqrel".into(), Value::Object(eqrel));
    }
    Value::Object(out)
}

pub fn model_to_json(m: &InfoModel) -> String {
    serde_json::to_string_pretty(&model_to_value(m)).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::canonical_full_model;

    #[test]
    fn parses_documented_example() {
        let text = r#"{
          "signature": { "predicates": [{"name": "P", "arity": 1}],
                         "functions": [{"name": "c", "arity": 0}] },
          "worlds": ["w1", "w2"],
          "domain": ["d", "e"],
          "interp": { "w1": { "P": [["d"]], "c": "d" },
                      "w2": { "P": [["d"], ["e"]], "c": "e" } },
          "eqrel": { "w2": [["d", "e"]] }
        }"#;
        let m = model_from_json(text, None).unwrap();
        assert_eq!(m.num_worlds(), 2);
        assert!(!m.is_id_model());
        assert_eq!(m.constant_at(1, "c").unwrap(), 1);
    }

    #[test]
    fn round_trips() {
        let m = canonical_full_model(2).unwrap();
        let back = model_from_json(&model_to_json(&m), None).unwrap();
        assert_eq!(back, m);
        let sig = Signature::builder().predicate("R", 2).function("f", 1, true).build().unwrap();
        let mut b = ModelBuilder::new(&sig, 1, 3);
        b.fact(0, "R", &[0, 1]).unwrap().fact(0, "R", &[2, 1]).unwrap().identify(0, 0, 2).unwrap();
        for d in 0..3 {
            b.function(0, "f", &[d], 1).unwrap();
        }
        let m = b.build().unwrap();
        assert_eq!(model_from_json(&model_to_json(&m), None).unwrap(), m);
    }

    #[test]
    fn reports_problems() {
        let sig = Signature::two_constants();
        let missing = r#"{"worlds": ["w"], "domain": ["d"], "interp": {"w": {"a": "d"}}}"#;
        assert!(matches!(model_from_json(missing, Some(&sig)), Err(ModelError::PartialFunction { .. })));
        let unknown = r#"{"worlds": ["w"], "domain": ["d"], "interp": {"w": {"a": "z", "b": "d"}}}"#;
        assert!(matches!(model_from_json(unknown, Some(&sig)), Err(ModelError::UnknownElement(_))));
        assert!(matches!(model_from_json("[]", Some(&sig)), Err(ModelError::Json(_))));
        assert!(matches!(model_from_json(r#"{"worlds": [], "domain": ["d"]}"#, Some(&sig)), Err(ModelError::NoWorlds)));
    }
}
