use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use inqbq::logic::state_from_names;
use inqbq::models::{model_from_value, InfoModel, State};
use inqbq::paperlab::named_sentence;
use inqbq::semantics::Assignment;
use inqbq::syntax::{check_formula, infer_signature, parse_formula, Formula, Signature, SyntaxError};
use serde_json::Value;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).with_context(|| format!("{} is not valid JSON", path.display()))
}

/// Renders a syntax error with a caret line under the offending text.
pub fn syntax_error(text: &str, err: SyntaxError) -> anyhow::Error {
    match err.span() {
        Some(span) => {
            let start = span.start.min(text.len());
            let width = span.end.saturating_sub(span.start).max(1);
            anyhow!("{err}\n  {text}\n  {}{}", " ".repeat(start), "^".repeat(width))
        }
        None => anyhow!("{err}"),
    }
}

/// A formula string, or a whole-string name such as `eta` or `chi3`.
pub fn formula(text: &str, sig: &Signature) -> Result<Formula> {
    if let Some(f) = named_sentence(text.trim()) {
        check_formula(&f, sig).map_err(|e| anyhow!("`{}` does not fit the signature: {e}", text.trim()))?;
        return Ok(f);
    }
    parse_formula(text, sig).map_err(|e| syntax_error(text, e))
}

/// An explicit signature (file path or inline JSON), or one inferred from
/// the formula texts.
pub fn signature(arg: Option<&str>, texts: &[&str]) -> Result<Signature> {
    if let Some(arg) = arg {
        let text = if arg.trim_start().starts_with('{') { arg.to_owned() } else { read(Path::new(arg))? };
        return Signature::from_json(&text).context("invalid signature");
    }
    let mut base = Signature::default();
    let mut plain = Vec::new();
    for text in texts {
        match named_sentence(text.trim()) {
            Some(f) => {
                let names = f.symbols();
                let consts: Vec<&str> = names.iter().map(String::as_str).filter(|n| !base.contains(n)).collect();
                base = base.with_constants(&consts)?;
            }
            None => plain.push(*text),
        }
    }
    for text in &plain {
        base = infer_signature([*text], &base).map_err(|e| syntax_error(text, e))?;
    }
    Ok(base)
}

/// A model given inline or as a path, relative paths resolved against `dir`.
pub fn model_value(v: &Value, dir: &Path) -> Result<InfoModel> {
    match v {
        Value::String(p) => model_file(&dir.join(p)),
        other => Ok(model_from_value(other, None)?),
    }
}

pub fn model_file(path: &Path) -> Result<InfoModel> {
    model_from_value(&read_json(path)?, None).with_context(|| format!("invalid model in {}", path.display()))
}

/// `all`, or comma-separated world names (empty for the empty state).
pub fn state_arg(m: &InfoModel, arg: &str) -> Result<State> {
    let v = if arg.trim() == "all" {
        Value::from("all")
    } else {
        Value::from(split_names(arg))
    };
    Ok(state_from_names(m, &v)?)
}

/// Splits on commas outside parentheses, so `(d0,d1)` stays one name.
fn split_names(arg: &str) -> Vec<&str> {
    let mut names = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in arg.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                names.push(arg[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    names.push(arg[start..].trim());
    names.retain(|s| !s.is_empty());
    names
}

/// `var=element` pairs.
pub fn assignment_args(m: &InfoModel, pairs: &[String]) -> Result<Assignment> {
    let mut names = BTreeMap::new();
    for pair in pairs {
        let (var, value) = pair.split_once('=').ok_or_else(|| anyhow!("assignment `{pair}` must look like x=d"))?;
        names.insert(var.trim().to_owned(), value.trim().to_owned());
    }
    Ok(Assignment::from_names(&names, m)?)
}

pub struct Query {
    pub model: InfoModel,
    pub state: State,
    pub assignment: Assignment,
    pub formula: Formula,
    pub text: String,
}

/// A query file: `model`, `state`, `assignment`, `formula`.
pub fn query_file(path: &Path) -> Result<Query> {
    let v = read_json(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let model = model_value(v.get("model").ok_or_else(|| anyhow!("query has no `model`"))?, &dir)?;
    let state = match v.get("state") {
        Some(s) => state_from_names(&model, s)?,
        None => model.full_state(),
    };
    let names: BTreeMap<String, String> = match v.get("assignment") {
        Some(a) => serde_json::from_value(a.clone()).context("`assignment` maps variables to element names")?,
        None => BTreeMap::new(),
    };
    let assignment = Assignment::from_names(&names, &model)?;
    let text = v.get("formula").and_then(Value::as_str).ok_or_else(|| anyhow!("query has no `formula` string"))?;
    let formula = formula(text, model.signature())?;
    if has_unassigned(&formula, &assignment) {
        bail!("free variables of `{text}` need values in `assignment`");
    }
    Ok(Query { model, state, assignment, formula, text: text.to_owned() })
}

/// Whether some free variable of `f` has no value under `g`.
pub fn has_unassigned(f: &Formula, g: &Assignment) -> bool {
    f.free_vars().iter().any(|x| g.get(x).is_none())
}
