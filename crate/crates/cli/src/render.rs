use std::fmt::Write;

use inqbq::logic::Verdict;
use inqbq::models::{InfoModel, State};
use inqbq::semantics::Assignment;

fn tuple(m: &InfoModel, t: &[usize]) -> String {
    let names: Vec<&str> = t.iter().map(|&d| m.domain_names()[d].as_str()).collect();
    if names.len() == 1 {
        names[0].to_owned()
    } else {
        format!("({})", names.join(","))
    }
}

pub fn state(m: &InfoModel, s: State) -> String {
    let names: Vec<&str> = s.worlds().map(|w| m.world_names()[w].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn assignment(m: &InfoModel, g: &Assignment) -> String {
    let parts: Vec<String> = g.iter().map(|(x, d)| format!("{x}={}", m.domain_names()[d])).collect();
    parts.join(" ")
}

/// One line per world listing every extension, function value and
/// non-trivial equality class.
pub fn model(m: &InfoModel) -> String {
    let n = m.domain_size();
    let mut out = format!("domain {{{}}}\n", m.domain_names().join(", "));
    let sig = m.signature();
    for w in 0..m.num_worlds() {
        let world = m.world(w);
        let interp = world.interpretation();
        let mut parts = Vec::new();
        for (i, p) in sig.predicates().iter().enumerate() {
            let rel = interp.predicate(i);
            if p.arity == 0 {
                parts.push(format!("{}={}", p.name, rel.contains(&[], n)));
            } else {
                let members: Vec<String> = rel.tuples(n).iter().map(|t| tuple(m, t)).collect();
                parts.push(format!("{}={{{}}}", p.name, members.join(",")));
            }
        }
        for (i, f) in sig.functions().iter().enumerate() {
            let table = interp.function(i);
            if f.arity == 0 {
                parts.push(format!("{}={}", f.name, m.domain_names()[table.apply(&[], n)]));
            } else {
                let entries: Vec<String> = (0..n.pow(f.arity as u32))
                    .map(|k| {
                        let args = inqbq::models::tuple_at(k, f.arity, n);
                        format!("{}->{}", tuple(m, &args), m.domain_names()[table.value_at(k)])
                    })
                    .collect();
                parts.push(format!("{}={{{}}}", f.name, entries.join(",")));
            }
        }
        let eq = world.equality();
        if !eq.is_discrete() {
            let blocks: Vec<String> =
                eq.blocks().iter().filter(|b| b.len() > 1).map(|b| format!("{{{}}}", tuple(m, b).trim_matches(['(', ')']))).collect();
            parts.push(format!("eq={}", blocks.join("")));
        }
        let _ = writeln!(out, "{}: {}", m.world_names()[w], parts.join(" "));
    }
    out
}

pub fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::ExhaustedBounds { max_worlds, max_domain, models_examined } => format!(
            "no countermodel with at most {max_worlds} worlds and {max_domain} individuals ({models_examined} models examined)\n"
        ),
        Verdict::Countermodel(cm) => {
            let mut out = format!(
                "countermodel found ({} models examined)\nstate {}\n",
                cm.models_examined,
                state(&cm.model, cm.state)
            );
            if !cm.assignment.is_empty() {
                let _ = writeln!(out, "assignment {}", assignment(&cm.model, &cm.assignment));
            }
            out.push_str(&model(&cm.model));
            out
        }
    }
}
